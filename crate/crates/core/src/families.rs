//! Named ideal families and nearly homocyclic abelian groups, plus the
//! annihilators and derived-subgroup types predicted from group parameters.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use thiserror::Error;

use crate::bipoly::{is_prime, parse_poly_list, trace_poly_x, trace_poly_xy, BiPoly};
use crate::groups::{GroupParams, MaxClassParams, NonMaxParams};
use crate::zlinalg::AbelianType;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyName {
    W,
    Y,
    R,
    S,
    T,
    V,
    U,
    Xfam,
    Z,
    Zprime,
    L2,
    L,
}

impl FamilyName {
    pub const ALL: [FamilyName; 12] = [
        FamilyName::W,
        FamilyName::Y,
        FamilyName::R,
        FamilyName::S,
        FamilyName::T,
        FamilyName::V,
        FamilyName::U,
        FamilyName::Xfam,
        FamilyName::Z,
        FamilyName::Zprime,
        FamilyName::L2,
        FamilyName::L,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            FamilyName::W => "W",
            FamilyName::Y => "Y",
            FamilyName::R => "R",
            FamilyName::S => "S",
            FamilyName::T => "T",
            FamilyName::V => "V",
            FamilyName::U => "U",
            FamilyName::Xfam => "Xfam",
            FamilyName::Z => "Z",
            FamilyName::Zprime => "Zprime",
            FamilyName::L2 => "L2",
            FamilyName::L => "L",
        }
    }

    fn uses_nu(&self) -> bool {
        matches!(
            self,
            FamilyName::R | FamilyName::S | FamilyName::T | FamilyName::V | FamilyName::U
        )
    }

    fn uses_mu(&self) -> bool {
        !matches!(self, FamilyName::L2 | FamilyName::L)
    }
}

impl fmt::Display for FamilyName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FamilyName {
    type Err = FamilyError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FamilyName::ALL
            .into_iter()
            .find(|n| n.as_str() == s)
            .ok_or_else(|| FamilyError::UnknownFamily(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("unknown family '{0}'")]
    UnknownFamily(String),
    #[error("invalid parameter {name}: {msg}")]
    InvalidParameter { name: String, msg: String },
    #[error("malformed family spec: {0}")]
    Malformed(String),
}

fn invalid(name: &str, msg: impl Into<String>) -> FamilyError {
    FamilyError::InvalidParameter {
        name: name.to_string(),
        msg: msg.into(),
    }
}

/// One member of a named ideal family.
///
/// Scalars that a family does not use are ignored and kept at zero by the
/// constructors. `a` is `a(m-1), …, a(m-k)` for `W` with `m = mu + 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IdealFamily {
    pub name: FamilyName,
    pub mu: u32,
    pub nu: u32,
    pub p: u64,
    pub beta: i64,
    pub delta: i64,
    pub rho: i64,
    pub a: Vec<i64>,
}

impl IdealFamily {
    fn base(name: FamilyName, mu: u32, nu: u32) -> Self {
        IdealFamily {
            name,
            mu,
            nu,
            p: 3,
            beta: 0,
            delta: 0,
            rho: 0,
            a: Vec::new(),
        }
    }

    pub fn w(p: u64, mu: u32, a: Vec<i64>) -> Self {
        IdealFamily {
            p,
            a,
            ..IdealFamily::base(FamilyName::W, mu, 1)
        }
    }

    pub fn y(p: u64, mu: u32) -> Self {
        IdealFamily {
            p,
            ..IdealFamily::base(FamilyName::Y, mu, 1)
        }
    }

    pub fn s(mu: u32, nu: u32, beta: i64, delta: i64, rho: i64) -> Self {
        IdealFamily {
            beta,
            delta,
            rho,
            ..IdealFamily::base(FamilyName::S, mu, nu)
        }
    }

    pub fn t(mu: u32, nu: u32, beta: i64, rho: i64) -> Self {
        IdealFamily {
            beta,
            rho,
            ..IdealFamily::base(FamilyName::T, mu, nu)
        }
    }

    pub fn v(mu: u32, nu: u32, delta: i64, rho: i64) -> Self {
        IdealFamily {
            delta,
            rho,
            ..IdealFamily::base(FamilyName::V, mu, nu)
        }
    }

    pub fn u(mu: u32, nu: u32, rho: i64) -> Self {
        IdealFamily {
            rho,
            ..IdealFamily::base(FamilyName::U, mu, nu)
        }
    }

    pub fn r(mu: u32, nu: u32) -> Self {
        IdealFamily::base(FamilyName::R, mu, nu)
    }

    pub fn xfam(mu: u32) -> Self {
        IdealFamily::base(FamilyName::Xfam, mu, 2)
    }

    pub fn z(mu: u32, beta: i64, rho: i64) -> Self {
        IdealFamily {
            beta,
            rho,
            ..IdealFamily::base(FamilyName::Z, mu, 2)
        }
    }

    pub fn zprime(mu: u32, rho: i64) -> Self {
        IdealFamily {
            rho,
            ..IdealFamily::base(FamilyName::Zprime, mu, 2)
        }
    }

    pub fn l2() -> Self {
        IdealFamily::base(FamilyName::L2, 2, 2)
    }

    pub fn l() -> Self {
        IdealFamily::base(FamilyName::L, 1, 1)
    }

    pub fn validate(&self) -> Result<(), FamilyError> {
        let unit = |name: &str, v: i64| {
            if (-1..=1).contains(&v) {
                Ok(())
            } else {
                Err(invalid(name, format!("{v} is not in {{-1,0,1}}")))
            }
        };
        unit("beta", self.beta)?;
        unit("delta", self.delta)?;
        unit("rho", self.rho)?;
        if self.name.uses_mu() && self.mu < 1 {
            return Err(invalid("mu", "must be at least 1"));
        }
        match self.name {
            FamilyName::W | FamilyName::Y => {
                if !is_prime(self.p) {
                    return Err(invalid("p", format!("{} is not a prime", self.p)));
                }
                if self.name == FamilyName::Y && !self.a.is_empty() {
                    return Err(invalid("a", "Y takes no a-vector"));
                }
                if self.a.len() > self.mu as usize {
                    return Err(invalid("a", "more entries than mu"));
                }
                let p = self.p as i64;
                if let Some(x) = self.a.iter().find(|x| x.abs() >= p) {
                    return Err(invalid("a", format!("entry {x} is not reduced modulo p")));
                }
            }
            FamilyName::R | FamilyName::S | FamilyName::T | FamilyName::V | FamilyName::U => {
                if self.nu < 1 || self.nu > self.mu {
                    return Err(invalid("nu", "requires mu >= nu >= 1"));
                }
            }
            FamilyName::Xfam | FamilyName::Z | FamilyName::Zprime => {
                if self.mu < 2 {
                    return Err(invalid("mu", "requires mu >= 2"));
                }
            }
            FamilyName::L2 | FamilyName::L => {}
        }
        Ok(())
    }

    /// Parse the text form `S mu=5 nu=3 beta=1 delta=0 rho=1`.
    pub fn parse(text: &str) -> Result<IdealFamily, FamilyError> {
        let mut words = text.split_whitespace();
        let name: FamilyName = words
            .next()
            .ok_or_else(|| FamilyError::Malformed("empty spec".into()))?
            .parse()?;
        let mut fam = IdealFamily::base(name, 1, 1);
        fam.mu = match name {
            FamilyName::L2 => 2,
            FamilyName::L => 1,
            _ => 0,
        };
        fam.nu = match name {
            FamilyName::Xfam | FamilyName::Z | FamilyName::Zprime | FamilyName::L2 => 2,
            FamilyName::W | FamilyName::Y | FamilyName::L => 1,
            _ => 0,
        };
        let mut gamma: Option<i64> = None;
        for w in words {
            let (k, v) = w
                .split_once('=')
                .ok_or_else(|| FamilyError::Malformed(format!("expected key=value, got '{w}'")))?;
            let int = |v: &str| -> Result<i64, FamilyError> {
                v.parse().map_err(|_| invalid(k, format!("'{v}' is not an integer")))
            };
            let nat = |v: &str| -> Result<u32, FamilyError> {
                v.parse()
                    .map_err(|_| invalid(k, format!("'{v}' is not a non-negative integer")))
            };
            match k {
                "mu" => fam.mu = nat(v)?,
                "nu" if name.uses_nu() => fam.nu = nat(v)?,
                "p" => fam.p = v.parse().map_err(|_| invalid(k, format!("'{v}' is not a prime")))?,
                "beta" => fam.beta = int(v)?,
                "delta" => fam.delta = int(v)?,
                "rho" => fam.rho = int(v)?,
                "gamma" if name == FamilyName::W => gamma = Some(int(v)?),
                "a" if name == FamilyName::W => {
                    fam.a = v.split(',').map(int).collect::<Result<_, _>>()?;
                }
                _ => return Err(invalid(k, format!("not a parameter of {name}"))),
            }
        }
        if let Some(g) = gamma {
            if !fam.a.is_empty() {
                return Err(invalid("gamma", "give either gamma or a"));
            }
            if g != 0 {
                fam.a = vec![g];
            }
        }
        if name.uses_mu() && fam.mu == 0 {
            return Err(invalid("mu", "missing"));
        }
        if name.uses_nu() && fam.nu == 0 {
            return Err(invalid("nu", "missing"));
        }
        fam.validate()?;
        Ok(fam)
    }

    /// Generators of the ideal.
    pub fn generators(&self) -> Result<Vec<BiPoly>, FamilyError> {
        family_generators(self)
    }
}

impl fmt::Display for IdealFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)?;
        match self.name {
            FamilyName::W => {
                let a: Vec<String> = self.a.iter().map(ToString::to_string).collect();
                write!(f, " p={} mu={}", self.p, self.mu)?;
                if !a.is_empty() {
                    write!(f, " a={}", a.join(","))?;
                }
                Ok(())
            }
            FamilyName::Y => write!(f, " p={} mu={}", self.p, self.mu),
            FamilyName::R => write!(f, " mu={} nu={}", self.mu, self.nu),
            FamilyName::S => write!(
                f,
                " mu={} nu={} beta={} delta={} rho={}",
                self.mu, self.nu, self.beta, self.delta, self.rho
            ),
            FamilyName::T => write!(f, " mu={} nu={} beta={} rho={}", self.mu, self.nu, self.beta, self.rho),
            FamilyName::V => write!(
                f,
                " mu={} nu={} delta={} rho={}",
                self.mu, self.nu, self.delta, self.rho
            ),
            FamilyName::U => write!(f, " mu={} nu={} rho={}", self.mu, self.nu, self.rho),
            FamilyName::Xfam => write!(f, " mu={}", self.mu),
            FamilyName::Z => write!(f, " mu={} beta={} rho={}", self.mu, self.beta, self.rho),
            FamilyName::Zprime => write!(f, " mu={} rho={}", self.mu, self.rho),
            FamilyName::L2 | FamilyName::L => Ok(()),
        }
    }
}

fn xp(e: u32) -> BiPoly {
    BiPoly::x_pow(e)
}

fn yp(e: u32) -> BiPoly {
    BiPoly::y_pow(e)
}

fn c(v: i64) -> BigInt {
    BigInt::from(v)
}

/// `(X^mu, Y^nu - ypart·X^(mu-1), XY - xy·X^(mu-1), T + tr·X^(mu-1))`
fn template(mu: u32, nu: u32, ypart: i64, xy: i64, tr: i64) -> Vec<BiPoly> {
    let top = xp(mu - 1);
    vec![
        xp(mu),
        &yp(nu) - &top.scale(&c(ypart)),
        &(&BiPoly::x() * &BiPoly::y()) - &top.scale(&c(xy)),
        &trace_poly_xy() + &top.scale(&c(tr)),
    ]
}

/// Generator list of a family member.
pub fn family_generators(spec: &IdealFamily) -> Result<Vec<BiPoly>, FamilyError> {
    spec.validate()?;
    let mu = spec.mu;
    let (b, d, r) = (spec.beta, spec.delta, spec.rho);
    Ok(match spec.name {
        FamilyName::W | FamilyName::Y => {
            let mut y = BiPoly::y();
            for (l, a) in spec.a.iter().enumerate() {
                y = &y - &xp(mu - 1 - l as u32).scale(&c(*a));
            }
            let t = trace_poly_x(spec.p).map_err(|e| invalid("p", e.to_string()))?;
            vec![xp(mu), y, t]
        }
        FamilyName::S => {
            let ypart = if spec.nu == 2 { (1 - b) * r } else { r };
            template(mu, spec.nu, ypart, r * d, r * b)
        }
        FamilyName::T => {
            let ypart = if spec.nu == 2 { (1 - b) * r } else { r };
            template(mu, spec.nu, ypart, 0, r * b)
        }
        FamilyName::V => template(mu, spec.nu, r, r * d, 0),
        FamilyName::U => template(mu, spec.nu, r, 0, 0),
        FamilyName::R => template(mu, spec.nu, 0, 0, 0),
        FamilyName::Z => template(mu, 2, (1 - b) * r, 0, r * b),
        FamilyName::Zprime => template(mu, 2, r, 0, 0),
        FamilyName::Xfam => vec![
            xp(mu),
            yp(2),
            &BiPoly::x() * &BiPoly::y(),
            trace_poly_x(3).expect("3 is prime"),
        ],
        FamilyName::L2 => parse_poly_list("X^2,Y^2,X*Y,3").expect("literal"),
        FamilyName::L => parse_poly_list("X,Y,3").expect("literal"),
    })
}

/// Euclidean data of `A(p, mu)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NearlyHomocyclicSpec {
    pub p: u64,
    pub mu: u32,
    pub q: u32,
    pub r: u32,
}

impl NearlyHomocyclicSpec {
    pub fn new(p: u64, mu: u32) -> Option<Self> {
        if !is_prime(p) {
            return None;
        }
        let d = (p - 1) as u32;
        Some(NearlyHomocyclicSpec {
            p,
            mu,
            q: mu / d,
            r: mu % d,
        })
    }

    pub fn abelian_type(&self) -> AbelianType {
        let p = BigInt::from(self.p);
        let mut orders = Vec::new();
        for _ in 0..self.r {
            orders.push(p.pow(self.q + 1));
        }
        for _ in self.r..(self.p - 1) as u32 {
            orders.push(p.pow(self.q));
        }
        AbelianType::from_cyclic_orders(orders)
    }
}

/// The nearly homocyclic abelian p-group of order `p^mu`.
pub fn nearly_homocyclic(p: u64, mu: u32) -> Option<AbelianType> {
    NearlyHomocyclicSpec::new(p, mu).map(|s| s.abelian_type())
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("no prediction: {0}")]
pub struct NoPrediction(pub String);

/// An annihilator predicted from group parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PredictedIdeal {
    Family(IdealFamily),
    /// A fixed generator list from the exceptional table.
    Literal {
        label: String,
        generators: Vec<BiPoly>,
    },
}

impl PredictedIdeal {
    pub fn generators(&self) -> Vec<BiPoly> {
        match self {
            PredictedIdeal::Family(f) => family_generators(f).expect("predicted families are valid"),
            PredictedIdeal::Literal { generators, .. } => generators.clone(),
        }
    }
}

impl fmt::Display for PredictedIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PredictedIdeal::Family(fam) => write!(f, "{fam}"),
            PredictedIdeal::Literal { generators, .. } => {
                let g: Vec<String> = generators.iter().map(ToString::to_string).collect();
                write!(f, "({})", g.join(", "))
            }
        }
    }
}

/// One row of the exceptional table for `m = 5`, `n = 6`, `rho = ±1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExceptionalRow {
    pub groups: &'static str,
    pub tkt: &'static str,
    pub classes: u32,
    pub beta: i64,
    pub delta: i64,
    pub rho: i64,
    pub ideal: &'static str,
    pub basis: &'static str,
    pub derived_type: &'static [u64],
}

pub const EXCEPTIONAL_ROWS: [ExceptionalRow; 4] = [
    ExceptionalRow {
        groups: "<729,37..39>",
        tkt: "b.10",
        classes: 3,
        beta: 0,
        delta: 0,
        rho: 1,
        ideal: "X^2-Y^2,X*Y,9",
        basis: "1,X,Y",
        derived_type: &[9, 3, 3],
    },
    ExceptionalRow {
        groups: "<729,44..47>",
        tkt: "H.4",
        classes: 4,
        beta: 1,
        delta: 1,
        rho: 1,
        ideal: "X^2,Y^2,X*Y+3",
        basis: "1,X,Y",
        derived_type: &[9, 3, 3],
    },
    ExceptionalRow {
        groups: "<729,56..57>",
        tkt: "G.19",
        classes: 2,
        beta: -1,
        delta: 0,
        rho: 1,
        ideal: "X^2-Y^2,X*Y,3",
        basis: "1,X,Y,Y^2",
        derived_type: &[3, 3, 3, 3],
    },
    ExceptionalRow {
        groups: "<729,34..36>",
        tkt: "b.10",
        classes: 3,
        beta: 0,
        delta: 0,
        rho: -1,
        ideal: "X^2+Y^2,X*Y,3",
        basis: "1,X,Y,Y^2",
        derived_type: &[3, 3, 3, 3],
    },
];

pub fn exceptional_row(beta: i64, delta: i64, rho: i64) -> Option<&'static ExceptionalRow> {
    EXCEPTIONAL_ROWS
        .iter()
        .find(|r| (r.beta, r.delta, r.rho) == (beta, delta, rho))
}

fn max_class_in_hypotheses(g: &MaxClassParams) -> Result<(), NoPrediction> {
    g.validate().map_err(|e| NoPrediction(e.to_string()))
}

fn nonmax_in_hypotheses(g: &NonMaxParams) -> Result<(), NoPrediction> {
    g.validate().map_err(|e| NoPrediction(e.to_string()))
}

/// The annihilator the theorems assign to a group.
pub fn predicted_annihilator(params: &GroupParams) -> Result<PredictedIdeal, NoPrediction> {
    match params {
        GroupParams::Max(g) => {
            max_class_in_hypotheses(g)?;
            let mu = g.m - 2;
            if mu == 0 {
                return Err(NoPrediction("m = 2 is abelian".into()));
            }
            let fam = if g.a.is_empty() {
                IdealFamily::y(g.p, mu)
            } else {
                IdealFamily::w(g.p, mu, g.a.clone())
            };
            Ok(PredictedIdeal::Family(fam))
        }
        GroupParams::NonMax(g) => {
            nonmax_in_hypotheses(g)?;
            let (m, e) = (g.m, g.e());
            if g.rho == 0 {
                return Ok(PredictedIdeal::Family(if e == 3 {
                    IdealFamily::xfam(m - 2)
                } else {
                    IdealFamily::r(m - 2, e - 1)
                }));
            }
            if m >= 6 {
                return Ok(PredictedIdeal::Family(IdealFamily::s(
                    m - 2,
                    e - 1,
                    g.beta,
                    g.delta,
                    g.rho,
                )));
            }
            if m == 5 && e == 3 {
                let row = exceptional_row(g.beta, g.delta, g.rho).ok_or_else(|| {
                    NoPrediction(format!(
                        "(beta,delta,rho)=({},{},{}) is not an exceptional table row",
                        g.beta, g.delta, g.rho
                    ))
                })?;
                return Ok(PredictedIdeal::Literal {
                    label: format!("{} {}", row.groups, row.tkt),
                    generators: parse_poly_list(row.ideal).expect("table literal"),
                });
            }
            Err(NoPrediction(format!("defect k=1 with m={m}, e={e} is not covered")))
        }
    }
}

/// The derived-subgroup type the theorems assign to a group.
pub fn predicted_derived_type(params: &GroupParams) -> Result<AbelianType, NoPrediction> {
    match params {
        GroupParams::Max(g) => {
            max_class_in_hypotheses(g)?;
            Ok(nearly_homocyclic(g.p, g.m - 2).expect("validated prime"))
        }
        GroupParams::NonMax(g) => {
            nonmax_in_hypotheses(g)?;
            let (m, e) = (g.m, g.e());
            if g.rho == 0 {
                let a = nearly_homocyclic(3, m - 2).expect("3 is prime");
                let b = if e == 3 {
                    AbelianType::from_u64s(&[3])
                } else {
                    nearly_homocyclic(3, e - 2).expect("3 is prime")
                };
                return Ok(a.direct_sum(&b));
            }
            if m == 5 && e == 3 {
                if let Some(row) = exceptional_row(g.beta, g.delta, g.rho) {
                    return Ok(AbelianType::from_u64s(row.derived_type));
                }
            }
            Err(NoPrediction(format!("defect k=1 with m={m}, e={e} is not covered")))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gens(s: &str) -> Vec<BiPoly> {
        parse_poly_list(s).unwrap()
    }

    #[test]
    fn generator_examples() {
        assert_eq!(
            family_generators(&IdealFamily::y(3, 4)).unwrap(),
            gens("X^4,Y,X^2+3*X+3")
        );
        assert_eq!(
            family_generators(&IdealFamily::s(5, 4, 1, -1, 1)).unwrap(),
            gens("X^5,Y^4-X^4,X*Y+X^4,X^2+3*X+3+3*Y+Y^2+X^4")
        );
        assert_eq!(family_generators(&IdealFamily::l()).unwrap(), gens("X,Y,3"));
        assert_eq!(
            family_generators(&IdealFamily::w(3, 4, vec![1])).unwrap(),
            gens("X^4,Y-X^3,X^2+3*X+3")
        );
        assert_eq!(
            family_generators(&IdealFamily::s(5, 2, 1, 0, 1)).unwrap(),
            gens("X^5,Y^2,X*Y,X^2+3*X+3+3*Y+Y^2+X^4")
        );
        assert_eq!(
            family_generators(&IdealFamily::w(5, 5, vec![1, 2])).unwrap(),
            gens("X^5,Y-X^4-2*X^3,X^4+5*X^3+10*X^2+10*X+5")
        );
    }

    #[test]
    fn validation() {
        assert!(IdealFamily::s(3, 4, 0, 0, 1).validate().is_err());
        assert!(IdealFamily::s(4, 3, 2, 0, 1).validate().is_err());
        assert!(IdealFamily::w(4, 3, vec![]).validate().is_err());
        assert!(IdealFamily::w(3, 3, vec![3]).validate().is_err());
        assert!(IdealFamily::r(0, 0).validate().is_err());
    }

    #[test]
    fn spec_text_round_trip() {
        let f = IdealFamily::parse("S mu=5 nu=3 beta=1 delta=0 rho=1").unwrap();
        assert_eq!(f, IdealFamily::s(5, 3, 1, 0, 1));
        assert_eq!(IdealFamily::parse(&f.to_string()).unwrap(), f);
        let w = IdealFamily::parse("W p=3 mu=4 gamma=1").unwrap();
        assert_eq!(w, IdealFamily::w(3, 4, vec![1]));
        for fam in [
            IdealFamily::w(5, 6, vec![1, 3]),
            IdealFamily::y(7, 3),
            IdealFamily::xfam(4),
            IdealFamily::z(4, 1, -1),
            IdealFamily::zprime(3, 1),
            IdealFamily::l2(),
            IdealFamily::l(),
            IdealFamily::t(4, 3, -1, 1),
            IdealFamily::v(4, 3, 1, 1),
            IdealFamily::u(4, 3, -1),
            IdealFamily::r(4, 3),
        ] {
            assert_eq!(IdealFamily::parse(&fam.to_string()).unwrap(), fam, "{fam}");
        }
        assert!(IdealFamily::parse("Q mu=1").is_err());
        assert!(IdealFamily::parse("S mu=5").is_err());
        assert!(IdealFamily::parse("R mu=5 nu=3 gamma=1").is_err());
        assert!(IdealFamily::parse("R mu=5 nu=x").is_err());
    }

    #[test]
    fn nearly_homocyclic_examples() {
        assert_eq!(nearly_homocyclic(3, 5).unwrap(), AbelianType::from_u64s(&[27, 9]));
        assert_eq!(nearly_homocyclic(2, 7).unwrap(), AbelianType::from_u64s(&[128]));
        assert_eq!(nearly_homocyclic(5, 3).unwrap(), AbelianType::from_u64s(&[5, 5, 5]));
        assert_eq!(
            nearly_homocyclic(5, 7).unwrap(),
            AbelianType::from_u64s(&[25, 25, 25, 5])
        );
        assert_eq!(nearly_homocyclic(7, 0).unwrap(), AbelianType::trivial());
        assert_eq!(nearly_homocyclic(4, 3), None);
    }

    #[test]
    fn predictions() {
        let g = GroupParams::Max(MaxClassParams::p3(6, 0, 0, 1));
        assert_eq!(
            predicted_annihilator(&g).unwrap().generators(),
            gens("X^4,Y-X^3,X^2+3*X+3")
        );
        let g = GroupParams::NonMax(NonMaxParams::new(7, 9, 0, 0, 0, 0, 0));
        assert_eq!(
            predicted_annihilator(&g).unwrap(),
            PredictedIdeal::Family(IdealFamily::r(5, 3))
        );
        assert_eq!(
            predicted_derived_type(&g).unwrap(),
            AbelianType::from_u64s(&[27, 9, 3, 3])
        );
        let g = GroupParams::NonMax(NonMaxParams::new(5, 6, 1, 1, 1, 1, 1));
        assert_eq!(predicted_annihilator(&g).unwrap().generators(), gens("X^2,Y^2,X*Y+3"));
        assert_eq!(predicted_derived_type(&g).unwrap(), AbelianType::from_u64s(&[9, 3, 3]));
        let g = GroupParams::NonMax(NonMaxParams::new(6, 7, 0, 0, 0, 0, 0));
        assert_eq!(predicted_derived_type(&g).unwrap(), AbelianType::from_u64s(&[9, 9, 3]));
        let g = GroupParams::NonMax(NonMaxParams::new(5, 6, 0, 1, 0, 0, 1));
        assert!(predicted_annihilator(&g).is_err());
        let g = GroupParams::NonMax(NonMaxParams::new(5, 7, 0, 0, 0, 0, 1));
        assert!(predicted_derived_type(&g).is_err());
        let g = GroupParams::NonMax(NonMaxParams::new(4, 9, 0, 0, 0, 0, 0));
        assert!(predicted_annihilator(&g).is_err());
        let g = GroupParams::Max(MaxClassParams::new(5, 9, 0, 0, vec![]));
        assert_eq!(
            predicted_derived_type(&g).unwrap(),
            AbelianType::from_u64s(&[25, 25, 25, 5])
        );
    }
}
