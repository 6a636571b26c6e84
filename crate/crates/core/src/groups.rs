//! Metabelian p-groups as modules: the derived subgroup `G'` is
//! `Z^symbols / relations`, with conjugation by `x` and `y` given by
//! commuting matrices. Evaluating a polynomial on `s_2` gives an annihilator
//! test that is independent of the quotient engine.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::bipoly::{is_prime, trace_poly_x, BiPoly, Monomial};
use crate::harness::{Stopwatch, Verdict, VerificationReport};
use crate::quotient::{build_quotient, close_under, default_cap};
use crate::zlinalg::{unit_vec, AbelianType, IntMat, Lattice};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("inconsistent presentation: |G'| = {computed}, expected {expected}")]
    InconsistentPresentation { computed: String, expected: String },
    #[error("operation requires {0}")]
    WrongKind(&'static str),
}

fn binom(n: u64, k: u64) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

/// Parameters of a maximal-class p-group.
///
/// `a` holds `a(m-1), …, a(m-k)`; its length is the defect `k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct MaxClassParams {
    pub p: u64,
    pub m: u32,
    pub w: i64,
    pub z: i64,
    pub a: Vec<i64>,
}

impl MaxClassParams {
    pub fn new(p: u64, m: u32, w: i64, z: i64, a: Vec<i64>) -> Self {
        MaxClassParams { p, m, w, z, a }
    }

    /// The 3-group with parameters `(alpha, beta, gamma)`.
    pub fn p3(m: u32, alpha: i64, beta: i64, gamma: i64) -> Self {
        let a = if gamma == 0 { vec![] } else { vec![gamma] };
        MaxClassParams::new(3, m, alpha, beta, a)
    }

    pub fn k(&self) -> u32 {
        self.a.len() as u32
    }

    pub fn validate(&self) -> Result<(), GroupError> {
        let bad = |s: String| Err(GroupError::InvalidParams(s));
        if !is_prime(self.p) {
            return bad(format!("p={} is not a prime", self.p));
        }
        if self.m < 3 {
            return bad(format!("m={} is below 3", self.m));
        }
        let p = self.p as i64;
        for (name, v) in [("w", self.w), ("z", self.z)] {
            if v.abs() >= p {
                return bad(format!("{name}={v} is not reduced modulo p"));
            }
        }
        if let Some(v) = self.a.iter().find(|v| v.abs() >= p) {
            return bad(format!("a entry {v} is not reduced modulo p"));
        }
        let k = self.k() as i64;
        let kmax = if self.m <= 4 { 0 } else { (self.m as i64 - 4).min(p - 2) };
        if k > kmax {
            return bad(format!("defect k={k} exceeds {kmax} for p={}, m={}", self.p, self.m));
        }
        if self.a.last().is_some_and(|x| x.rem_euclid(p) == 0) {
            return bad("a(m-k) must be non-zero".into());
        }
        Ok(())
    }
}

/// Parameters of a non-maximal-class 3-group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct NonMaxParams {
    pub m: u32,
    pub n: u32,
    pub alpha: i64,
    pub beta: i64,
    pub gamma: i64,
    pub delta: i64,
    pub rho: i64,
}

impl NonMaxParams {
    pub fn new(m: u32, n: u32, alpha: i64, beta: i64, gamma: i64, delta: i64, rho: i64) -> Self {
        NonMaxParams {
            m,
            n,
            alpha,
            beta,
            gamma,
            delta,
            rho,
        }
    }

    /// `e = n - m + 2`.
    pub fn e(&self) -> u32 {
        self.n + 2 - self.m
    }

    pub fn k(&self) -> u32 {
        u32::from(self.rho != 0)
    }

    pub fn validate(&self) -> Result<(), GroupError> {
        let bad = |s: String| Err(GroupError::InvalidParams(s));
        if !(4 <= self.m && self.m < self.n && self.n + 3 <= 2 * self.m) {
            return bad(format!("requires 4 <= m < n <= 2m-3, got m={}, n={}", self.m, self.n));
        }
        for (name, v) in [
            ("alpha", self.alpha),
            ("beta", self.beta),
            ("gamma", self.gamma),
            ("delta", self.delta),
            ("rho", self.rho),
        ] {
            if !(-1..=1).contains(&v) {
                return bad(format!("{name}={v} is not in {{-1,0,1}}"));
            }
        }
        if self.rho != 0 && self.m < 5 {
            return bad("defect k=1 requires m >= 5".into());
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GroupParams {
    Max(MaxClassParams),
    #[serde(rename = "nonmax")]
    NonMax(NonMaxParams),
}

impl GroupParams {
    pub fn validate(&self) -> Result<(), GroupError> {
        match self {
            GroupParams::Max(g) => g.validate(),
            GroupParams::NonMax(g) => g.validate(),
        }
    }

    pub fn p(&self) -> u64 {
        match self {
            GroupParams::Max(g) => g.p,
            GroupParams::NonMax(_) => 3,
        }
    }

    pub fn m(&self) -> u32 {
        match self {
            GroupParams::Max(g) => g.m,
            GroupParams::NonMax(g) => g.m,
        }
    }

    /// Logarithmic order.
    pub fn n(&self) -> u32 {
        match self {
            GroupParams::Max(g) => g.m,
            GroupParams::NonMax(g) => g.n,
        }
    }

    /// CF-invariant; 2 for maximal class.
    pub fn e(&self) -> u32 {
        self.n() + 2 - self.m()
    }

    pub fn k(&self) -> u32 {
        match self {
            GroupParams::Max(g) => g.k(),
            GroupParams::NonMax(g) => g.k(),
        }
    }

    /// Nilpotency class `m - 1`.
    pub fn class(&self) -> u32 {
        self.m() - 1
    }

    /// Coclass `n - (m - 1)`.
    pub fn coclass(&self) -> u32 {
        self.n() + 1 - self.m()
    }

    pub fn parse(text: &str) -> Result<GroupParams, GroupError> {
        text.parse()
    }
}

impl fmt::Display for GroupParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupParams::Max(g) => {
                write!(f, "max p={} m={} k={} w={} z={}", g.p, g.m, g.k(), g.w, g.z)?;
                if !g.a.is_empty() {
                    let a: Vec<String> = g.a.iter().map(ToString::to_string).collect();
                    write!(f, " a={}", a.join(","))?;
                }
                Ok(())
            }
            GroupParams::NonMax(g) => write!(
                f,
                "nonmax m={} n={} alpha={} beta={} gamma={} delta={} rho={}",
                g.m, g.n, g.alpha, g.beta, g.gamma, g.delta, g.rho
            ),
        }
    }
}

impl FromStr for GroupParams {
    type Err = GroupError;

    /// `max p=3 m=6 k=1 w=0 z=0 a=1` or
    /// `nonmax m=6 n=7 alpha=0 beta=0 gamma=1 delta=0 rho=0`.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let bad = |s: String| GroupError::InvalidParams(s);
        let mut words = text.split_whitespace();
        let kind = words.next().ok_or_else(|| bad("empty group spec".into()))?;
        let mut kv: Vec<(&str, &str)> = Vec::new();
        for w in words {
            let (k, v) = w
                .split_once('=')
                .ok_or_else(|| bad(format!("expected key=value, got '{w}'")))?;
            if kv.iter().any(|(k2, _)| *k2 == k) {
                return Err(bad(format!("duplicate key '{k}'")));
            }
            kv.push((k, v));
        }
        let get = |k: &str| kv.iter().find(|(k2, _)| *k2 == k).map(|(_, v)| *v);
        let int = |k: &str, default: Option<i64>| -> Result<i64, GroupError> {
            match get(k) {
                Some(v) => v.parse().map_err(|_| bad(format!("{k}='{v}' is not an integer"))),
                None => default.ok_or_else(|| bad(format!("missing {k}"))),
            }
        };
        let check_keys = |allowed: &[&str]| -> Result<(), GroupError> {
            match kv.iter().find(|(k, _)| !allowed.contains(k)) {
                Some((k, _)) => Err(bad(format!("unknown key '{k}' for {kind}"))),
                None => Ok(()),
            }
        };
        let nat = |k: &str, default: Option<i64>| -> Result<u32, GroupError> {
            let v = int(k, default)?;
            u32::try_from(v).map_err(|_| bad(format!("{k}={v} must be non-negative")))
        };
        let params = match kind {
            "max" => {
                check_keys(&["p", "m", "k", "w", "z", "a", "alpha", "beta", "gamma"])?;
                let p = nat("p", Some(3))? as u64;
                let m = nat("m", None)?;
                let w = match get("alpha") {
                    Some(_) if get("w").is_some() => return Err(bad("give either w or alpha".into())),
                    Some(_) => int("alpha", None)?,
                    None => int("w", Some(0))?,
                };
                let z = match get("beta") {
                    Some(_) if get("z").is_some() => return Err(bad("give either z or beta".into())),
                    Some(_) => int("beta", None)?,
                    None => int("z", Some(0))?,
                };
                let mut a: Vec<i64> = match (get("a"), get("gamma")) {
                    (Some(_), Some(_)) => return Err(bad("give either a or gamma".into())),
                    (Some(v), None) => v
                        .split(',')
                        .map(|x| x.parse().map_err(|_| bad(format!("a entry '{x}' is not an integer"))))
                        .collect::<Result<_, _>>()?,
                    (None, Some(_)) => vec![int("gamma", None)?],
                    (None, None) => vec![],
                };
                if get("gamma").is_some() && a == [0] {
                    a.clear();
                }
                if let Some(k) = get("k") {
                    let k: usize = k.parse().map_err(|_| bad(format!("k='{k}' is not an integer")))?;
                    if k == 0 && a.iter().all(|x| *x == 0) {
                        a.clear();
                    }
                    if k != a.len() {
                        return Err(bad(format!("k={k} but {} a entries given", a.len())));
                    }
                }
                GroupParams::Max(MaxClassParams::new(p, m, w, z, a))
            }
            "nonmax" => {
                check_keys(&["m", "n", "alpha", "beta", "gamma", "delta", "rho"])?;
                GroupParams::NonMax(NonMaxParams::new(
                    nat("m", None)?,
                    nat("n", None)?,
                    int("alpha", Some(0))?,
                    int("beta", Some(0))?,
                    int("gamma", Some(0))?,
                    int("delta", Some(0))?,
                    int("rho", Some(0))?,
                ))
            }
            other => return Err(bad(format!("unknown group kind '{other}'"))),
        };
        params.validate()?;
        Ok(params)
    }
}

/// `G'` as a module over `Z[x,y]`.
#[derive(Clone, Debug)]
pub struct GroupModel {
    pub meta: GroupParams,
    pub symbols: Vec<String>,
    pub relations: Lattice,
    pub mx: IntMat,
    pub my: IntMat,
    pub s2_vec: Vec<BigInt>,
    pub xp_vec: Vec<BigInt>,
    pub yp_vec: Vec<BigInt>,
    derived_type: AbelianType,
}

/// Sparse linear combination of symbols; `None` marks a symbol that is zero
/// by the nilpotency bounds.
type Combo = Vec<(Option<usize>, i64)>;

fn dense(dim: usize, c: &Combo) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); dim];
    for (i, x) in c {
        if let Some(i) = i {
            v[*i] += *x;
        }
    }
    v
}

fn action_matrix(dim: usize, images: &[Combo]) -> IntMat {
    let cols: Vec<Vec<BigInt>> = images.iter().map(|c| dense(dim, c)).collect();
    IntMat::from_columns(dim, &cols)
}

impl GroupModel {
    #[allow(clippy::too_many_arguments)]
    fn finish(
        meta: GroupParams,
        symbols: Vec<String>,
        rels: Vec<Combo>,
        mx: IntMat,
        my: IntMat,
        s2: Combo,
        xp: Combo,
        yp: Combo,
    ) -> Result<GroupModel, GroupError> {
        let dim = symbols.len();
        let mut relations = Lattice::zero(dim);
        relations.extend(rels.iter().map(|r| dense(dim, r)));
        let comm = mx.mul(&my).sub(&my.mul(&mx));
        relations.extend(comm.columns());
        close_under(&mut relations, &[&mx, &my]);
        let derived_type = relations.quotient_type();
        let p = BigInt::from(meta.p());
        let expected = p.pow(meta.n() - 2);
        let computed = derived_type.order();
        if computed.as_ref() != Some(&expected) {
            return Err(GroupError::InconsistentPresentation {
                computed: computed.map_or_else(|| "infinite".to_string(), |c| c.to_string()),
                expected: expected.to_string(),
            });
        }
        let reduce = |c: &Combo| relations.reduce(&dense(dim, c));
        let model = GroupModel {
            s2_vec: reduce(&s2),
            xp_vec: reduce(&xp),
            yp_vec: reduce(&yp),
            meta,
            symbols,
            mx,
            my,
            derived_type,
            relations,
        };
        // G' is the normal closure of s_2; a proper submodule means the
        // presentation collapses to a smaller group
        let index = model.image_index();
        if !index.is_one() {
            return Err(GroupError::InconsistentPresentation {
                computed: format!("{} (normal closure of s2)", &expected / &index),
                expected: expected.to_string(),
            });
        }
        Ok(model)
    }

    /// Index of the submodule generated by `s_2` in the symbol module.
    fn image_index(&self) -> BigInt {
        let d = self.meta.m() + self.meta.e();
        let mut l = self.relations.clone();
        for i in 0..=d {
            for j in 0..=d - i {
                l.insert(psi(self, &BiPoly::monomial(Monomial::new(i, j), 1)));
            }
        }
        l.index().expect("finite symbol module")
    }

    pub fn build(params: &GroupParams) -> Result<GroupModel, GroupError> {
        match params {
            GroupParams::Max(g) => build_max_class(g),
            GroupParams::NonMax(g) => build_nonmax_3(g),
        }
    }

    pub fn dim(&self) -> usize {
        self.symbols.len()
    }

    pub fn derived_type(&self) -> &AbelianType {
        &self.derived_type
    }

    /// `|G'|`.
    pub fn derived_order(&self) -> BigInt {
        self.derived_type.order().expect("accepted models are finite")
    }

    pub fn is_zero(&self, v: &[BigInt]) -> bool {
        self.relations.contains(v)
    }

    /// Canonical representative of a vector modulo the relations.
    pub fn reduce(&self, v: &[BigInt]) -> Vec<BigInt> {
        self.relations.reduce(v)
    }

    /// Vector of the named symbol, e.g. `"sigma4"`.
    pub fn symbol_vec(&self, name: &str) -> Option<Vec<BigInt>> {
        let i = self.symbols.iter().position(|s| s == name)?;
        Some(self.reduce(&unit_vec(self.dim(), i)))
    }

    /// Describe a vector as a combination of symbols, e.g. `-sigma3+tau3`.
    pub fn describe(&self, v: &[BigInt]) -> String {
        let v = self.reduce(v);
        let mut out = String::new();
        for (i, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.sign() == num_bigint::Sign::Minus { "-" } else { "+" };
            if !out.is_empty() || sign == "-" {
                out.push_str(sign);
            }
            let a = num_traits::Signed::abs(c);
            if !a.is_one() {
                out.push_str(&format!("{a}*"));
            }
            out.push_str(&self.symbols[i]);
        }
        if out.is_empty() {
            "0".into()
        } else {
            out
        }
    }
}

/// Build a maximal-class p-group.
pub fn build_max_class(params: &MaxClassParams) -> Result<GroupModel, GroupError> {
    params.validate()?;
    let (p, m) = (params.p, params.m as usize);
    // symbols s_2 .. s_{m+1}
    let dim = m;
    let s = |j: usize| -> Option<usize> { (2..=m + 1).contains(&j).then(|| j - 2) };
    let symbols: Vec<String> = (2..=m + 1).map(|j| format!("s{j}")).collect();
    let mut rels: Vec<Combo> = Vec::new();
    for j in 1..=m - 2 {
        rels.push((1..=p as usize).map(|l| (s(j + l), binom(p, l as u64))).collect());
    }
    for j in m..=m + 1 {
        rels.push(vec![(s(j), 1)]);
    }
    let mx_images: Vec<Combo> = (2..=m + 1).map(|j| vec![(s(j), 1), (s(j + 1), 1)]).collect();
    // y acts as 1 + q(x-1) with q(X) = sum a(m-l) X^(m-l-2)
    let my_images: Vec<Combo> = (2..=m + 1)
        .map(|j| {
            let mut c = vec![(s(j), 1)];
            for (l, a) in params.a.iter().enumerate() {
                c.push((s(m - (l + 1) + j - 2), *a));
            }
            c
        })
        .collect();
    let mx = action_matrix(dim, &mx_images);
    let my = action_matrix(dim, &my_images);
    let xp = vec![(s(m - 1), params.w)];
    let mut yp = vec![(s(m - 1), params.z)];
    for l in 2..=p as usize {
        yp.push((s(l), -binom(p, l as u64)));
    }
    GroupModel::finish(
        GroupParams::Max(params.clone()),
        symbols,
        rels,
        mx,
        my,
        vec![(s(2), 1)],
        xp,
        yp,
    )
}

/// Build a non-maximal-class 3-group.
pub fn build_nonmax_3(params: &NonMaxParams) -> Result<GroupModel, GroupError> {
    params.validate()?;
    let m = params.m as usize;
    let e = params.e() as usize;
    let k = params.k() as usize;
    let (al, be, ga, de, rh) = (params.alpha, params.beta, params.gamma, params.delta, params.rho);
    let t_base = m;
    let sig_base = t_base + (m - 1);
    let tau_base = sig_base + (m - 1);
    let tau_top = e + k + 2;
    let dim = tau_base + (tau_top - 2);
    let s = |j: usize| -> Option<usize> { (2..=m + 1).contains(&j).then(|| j - 2) };
    let t = |j: usize| -> Option<usize> {
        if j == 2 {
            s(2)
        } else {
            (3..=m + 1).contains(&j).then(|| t_base + j - 3)
        }
    };
    let sg = |j: usize| -> Option<usize> { (3..=m + 1).contains(&j).then(|| sig_base + j - 3) };
    let ta = |j: usize| -> Option<usize> { (3..=tau_top).contains(&j).then(|| tau_base + j - 3) };
    let mut symbols: Vec<String> = (2..=m + 1).map(|j| format!("s{j}")).collect();
    symbols.extend((3..=m + 1).map(|j| format!("t{j}")));
    symbols.extend((3..=m + 1).map(|j| format!("sigma{j}")));
    symbols.extend((3..=tau_top).map(|j| format!("tau{j}")));
    assert_eq!(symbols.len(), dim);

    let mut rels: Vec<Combo> = Vec::new();
    let top = m + 1;
    // basic power relations
    for i in 3..=top {
        for f in [&s as &dyn Fn(usize) -> Option<usize>, &t, &sg, &ta] {
            rels.push(vec![(f(i), 3), (f(i + 1), 3), (f(i + 2), 1)]);
        }
    }
    // supplementary power relations
    rels.push(vec![(s(2), 3), (s(3), 3), (s(4), 1), (ta(4), 1)]);
    rels.push(vec![(s(2), 3), (t(3), 3), (t(4), 1), (sg(4), -1)]);
    // nilpotency: everything in gamma_m vanishes, tau beyond e+k too
    for j in m..=top {
        for f in [&s as &dyn Fn(usize) -> Option<usize>, &t, &sg, &ta] {
            rels.push(vec![(f(j), 1)]);
        }
    }
    for j in e + k + 1..=tau_top {
        rels.push(vec![(ta(j), 1)]);
    }
    // basic connecting relations
    for i in 5..=top {
        rels.push(vec![(sg(i), 1), (s(i - 2), -3)]);
        rels.push(vec![(ta(i), 1), (t(i - 2), 3)]);
        rels.push(vec![(s(i), 1), (sg(i), 1), (sg(i + 1), 1)]);
        rels.push(vec![(t(i), 1), (ta(i), -1), (ta(i + 1), -1)]);
    }
    let rb = rh * be;
    let rd = rh * de;
    // first central relations
    rels.push(vec![
        (s(2), 3),
        (s(3), 3),
        (t(3), 3),
        (s(4), 1),
        (t(4), 1),
        (sg(m - 1), -rb),
    ]);
    rels.push(vec![(ta(e + 1), 1), (sg(m - 1), rh)]);
    // second central relations
    rels.push(vec![(s(4), 1), (sg(4), 1), (sg(5), 1), (sg(m - 1), -rb)]);
    rels.push(vec![(t(4), 1), (ta(4), -1), (ta(5), -1), (sg(m - 1), -rb)]);
    rels.push(vec![(s(2), -3), (sg(4), 1), (ta(4), -1), (sg(m - 1), -rb)]);
    rels.push(vec![
        (s(3), 1),
        (sg(3), 1),
        (sg(4), 1),
        (sg(m - 2), -rb),
        (sg(m - 1), -ga),
        (ta(e), -de),
    ]);
    rels.push(vec![
        (t(3), -1),
        (ta(3), 1),
        (ta(4), 1),
        (sg(m - 2), -rd),
        (sg(m - 1), -al),
        (ta(e), -be),
    ]);

    let mut mx_images: Vec<Combo> = vec![Vec::new(); dim];
    let mut my_images: Vec<Combo> = vec![Vec::new(); dim];
    for j in 2..=top {
        let i = s(j).unwrap();
        mx_images[i] = vec![(s(j), 1), (s(j + 1), 1)];
        my_images[i] = match j {
            2 => vec![(s(2), 1), (t(3), 1)],
            3 => vec![(s(3), 1), (sg(m - 1), -rd)],
            _ => vec![(s(j), 1)],
        };
    }
    for j in 3..=top {
        let i = t(j).unwrap();
        mx_images[i] = if j == 3 {
            vec![(t(3), 1), (sg(m - 1), -rd)]
        } else {
            vec![(t(j), 1)]
        };
        my_images[i] = vec![(t(j), 1), (t(j + 1), 1)];
        let i = sg(j).unwrap();
        mx_images[i] = vec![(sg(j), 1), (sg(j + 1), 1)];
        my_images[i] = vec![(sg(j), 1)];
    }
    for j in 3..=tau_top {
        let i = ta(j).unwrap();
        mx_images[i] = vec![(ta(j), 1)];
        my_images[i] = vec![(ta(j), 1), (ta(j + 1), 1)];
    }
    let mx = action_matrix(dim, &mx_images);
    let my = action_matrix(dim, &my_images);
    GroupModel::finish(
        GroupParams::NonMax(params.clone()),
        symbols,
        rels,
        mx,
        my,
        vec![(s(2), 1)],
        vec![(ta(3), 1)],
        vec![(sg(3), 1)],
    )
}

/// `s_2^{f(x-1, y-1)}` as a reduced vector.
pub fn psi(g: &GroupModel, f: &BiPoly) -> Vec<BigInt> {
    let dim = g.dim();
    let step = |op: &IntMat, v: &[BigInt]| -> Vec<BigInt> {
        let w: Vec<BigInt> = op.mul_vec(v).into_iter().zip(v).map(|(a, b)| a - b).collect();
        g.reduce(&w)
    };
    let mut acc = vec![BigInt::zero(); dim];
    let mut y_powers: Vec<Vec<BigInt>> = vec![g.s2_vec.clone()];
    let mut cache: std::collections::HashMap<Monomial, Vec<BigInt>> = Default::default();
    for (m, c) in f.terms() {
        while y_powers.len() <= m.y as usize {
            let next = step(&g.my, y_powers.last().unwrap());
            y_powers.push(next);
        }
        let v = cache.entry(*m).or_insert_with(|| {
            let mut v = y_powers[m.y as usize].clone();
            for _ in 0..m.x {
                if v.iter().all(Zero::is_zero) {
                    break;
                }
                v = step(&g.mx, &v);
            }
            v
        });
        for (a, b) in acc.iter_mut().zip(v.iter()) {
            *a += c * b;
        }
    }
    g.reduce(&acc)
}

/// Kernel test for Furtwängler's map.
pub fn annihilator_contains(g: &GroupModel, f: &BiPoly) -> bool {
    psi(g, f).iter().all(Zero::is_zero)
}

/// Inclusion of the claimed ideal in the annihilator plus equality of the
/// finite quotient orders, which together force equality of ideals.
pub fn verify_annihilator(g: &GroupModel, claimed: &[BiPoly]) -> VerificationReport {
    let start = Stopwatch::start();
    let expected_type = g.derived_type().clone();
    let mut report = VerificationReport::new(
        "annihilator",
        g.meta.to_string(),
        format!(
            "({}) with quotient {}",
            claimed.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "),
            expected_type
        ),
    );
    if let Some(f) = claimed.iter().find(|f| !annihilator_contains(g, f)) {
        report.computed = format!("{f} is not in the annihilator");
        report.verdict = Verdict::Fail;
        return report.timed(start);
    }
    match build_quotient(claimed, default_cap(claimed)) {
        Ok(q) => {
            report.computed = format!("inclusion holds, quotient {}", q.abelian_type());
            report.verdict = if q.abelian_type() == &expected_type {
                Verdict::Pass
            } else {
                Verdict::Fail
            };
        }
        Err(e) => {
            report.computed = e.to_string();
            report.verdict = Verdict::Fail;
        }
    }
    report.timed(start)
}

/// Whether the powers `s_2^{(x-1)^i (y-1)^j}` with `i + j <= m + e` generate `G'`.
pub fn verify_surjectivity(g: &GroupModel) -> bool {
    g.image_index().is_one()
}

/// The four Schreier congruences and the power identities for a maximal-class
/// 3-group.
pub fn schreier_check(g: &GroupModel) -> Result<VerificationReport, GroupError> {
    let GroupParams::Max(params) = &g.meta else {
        return Err(GroupError::WrongKind("a maximal-class group"));
    };
    if params.p != 3 {
        return Err(GroupError::WrongKind("p = 3"));
    }
    let start = Stopwatch::start();
    let m = params.m;
    let alpha = params.w;
    let beta = params.z;
    let x = BiPoly::x();
    let y = BiPoly::y();
    let top = BiPoly::x_pow(m - 3);
    let f1 = top.scale(&BigInt::from(alpha));
    let f2 = &(&top.scale(&BigInt::from(beta)) - &x) - &BiPoly::constant(3);
    let t3x = trace_poly_x(3).expect("3 is prime");
    let t3y = t3x.swap_variables();
    let checks: [(&str, bool); 6] = [
        ("psi(F1) = x^3", psi(g, &f1) == g.xp_vec),
        ("psi(F2) = y^3", psi(g, &f2) == g.yp_vec),
        ("F1*X = 0", annihilator_contains(g, &(&f1 * &x))),
        ("F2*Y = 0", annihilator_contains(g, &(&f2 * &y))),
        ("F1*Y = -T3(X)", annihilator_contains(g, &(&(&f1 * &y) + &t3x))),
        ("F2*X = T3(Y)", annihilator_contains(g, &(&(&f2 * &x) - &t3y))),
    ];
    let failed: Vec<&str> = checks.iter().filter(|(_, ok)| !ok).map(|(n, _)| *n).collect();
    let mut report = VerificationReport::new("schreier", g.meta.to_string(), "all congruences hold".to_string());
    if failed.is_empty() {
        report.computed = "all congruences hold".into();
        report.verdict = Verdict::Pass;
    } else {
        report.computed = format!("failed: {}", failed.join("; "));
        report.verdict = Verdict::Fail;
    }
    Ok(report.timed(start))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bipoly::parse_poly_list;

    fn t(f: &[u64]) -> AbelianType {
        AbelianType::from_u64s(f)
    }

    fn poly(s: &str) -> BiPoly {
        s.parse().unwrap()
    }

    #[test]
    fn max_class_examples() {
        let g = build_max_class(&MaxClassParams::p3(4, 0, 0, 0)).unwrap();
        assert_eq!(g.derived_type(), &t(&[3, 3]));
        let g = build_max_class(&MaxClassParams::new(2, 3, 0, 0, vec![])).unwrap();
        assert_eq!(g.derived_type(), &t(&[2]));
        let g = build_max_class(&MaxClassParams::p3(3, 0, 0, 0)).unwrap();
        assert_eq!(g.derived_type(), &t(&[3]));
        let l = parse_poly_list("X,Y,3").unwrap();
        assert_eq!(verify_annihilator(&g, &l).verdict, Verdict::Pass);
    }

    #[test]
    fn max_class_psi() {
        let g = build_max_class(&MaxClassParams::p3(6, 0, 0, 0)).unwrap();
        assert!(annihilator_contains(&g, &poly("X^4")));
        assert!(!annihilator_contains(&g, &poly("X^3")));
        assert_eq!(psi(&g, &BiPoly::zero()), vec![BigInt::zero(); g.dim()]);
        assert_eq!(psi(&g, &BiPoly::one()), g.s2_vec);
        for j in 2..=6u32 {
            assert_eq!(psi(&g, &BiPoly::x_pow(j - 2)), g.symbol_vec(&format!("s{j}")).unwrap());
        }
    }

    #[test]
    fn defect_two_actions_commute() {
        let p = MaxClassParams::new(5, 7, 1, 0, vec![1, 2]);
        let g = build_max_class(&p).unwrap();
        assert_eq!(g.derived_type(), &t(&[25, 5, 5, 5]));
        let w = crate::families::IdealFamily::w(5, 5, vec![1, 2]).generators().unwrap();
        assert_eq!(verify_annihilator(&g, &w).verdict, Verdict::Pass);
    }

    #[test]
    fn nonmax_examples() {
        let g = build_nonmax_3(&NonMaxParams::new(4, 5, 1, 1, 1, 1, 0)).unwrap();
        assert_eq!(g.derived_type(), &t(&[3, 3, 3]));
        let g = build_nonmax_3(&NonMaxParams::new(5, 6, 1, 1, 1, 1, 1)).unwrap();
        assert_eq!(g.derived_type(), &t(&[9, 3, 3]));
        let l = parse_poly_list("X^2,Y^2,X*Y+3").unwrap();
        assert_eq!(verify_annihilator(&g, &l).verdict, Verdict::Pass);
        let g = build_nonmax_3(&NonMaxParams::new(6, 7, 0, 0, 1, 0, 0)).unwrap();
        assert_eq!(g.derived_type(), &t(&[9, 9, 3]));
        assert!(annihilator_contains(&g, &poly("X*Y")));
    }

    #[test]
    fn proper_normal_closure_is_rejected() {
        // the symbol module has the right order but s2 only reaches index 3
        let e = build_nonmax_3(&NonMaxParams::new(4, 5, -1, -1, -1, -1, 0)).unwrap_err();
        assert!(matches!(e, GroupError::InconsistentPresentation { ref computed, .. } if computed.starts_with("9 ")));
        // psi(X) vanishes when rho*beta = 1, gamma = 1, delta = 0
        assert!(build_nonmax_3(&NonMaxParams::new(5, 6, 0, 1, 1, 0, 1)).is_err());
    }

    #[test]
    fn table2_rows_exclude_y() {
        for (a, b, c, d) in [
            (0, 0, 0, 0),
            (0, 0, 0, 1),
            (0, -1, 0, 1),
            (0, 0, -1, 1),
            (0, -1, -1, 0),
            (1, 1, 1, 1),
            (1, 1, -1, 1),
        ] {
            let g = build_nonmax_3(&NonMaxParams::new(4, 5, a, b, c, d, 0)).unwrap();
            assert!(!annihilator_contains(&g, &BiPoly::y()));
            assert!(verify_surjectivity(&g));
        }
    }

    #[test]
    fn schreier_examples() {
        for (m, a, b, c) in [(6, 1, 0, 0), (4, 0, 0, 0), (5, 0, 1, 1)] {
            let g = build_max_class(&MaxClassParams::p3(m, a, b, c)).unwrap();
            assert_eq!(schreier_check(&g).unwrap().verdict, Verdict::Pass, "m={m}");
        }
    }

    #[test]
    fn wrong_ideal_fails() {
        let g = build_max_class(&MaxClassParams::p3(5, 0, 0, 1)).unwrap();
        let y3 = crate::families::IdealFamily::y(3, 3).generators().unwrap();
        assert_eq!(verify_annihilator(&g, &y3).verdict, Verdict::Fail);
    }

    #[test]
    fn spec_text() {
        let g: GroupParams = "max p=3 m=6 k=1 w=0 z=0 a=1".parse().unwrap();
        assert_eq!(g, GroupParams::Max(MaxClassParams::p3(6, 0, 0, 1)));
        assert_eq!(g.to_string().parse::<GroupParams>().unwrap(), g);
        let g: GroupParams = "nonmax m=6 n=7 alpha=0 beta=0 gamma=1 delta=0 rho=0".parse().unwrap();
        assert_eq!(g.to_string().parse::<GroupParams>().unwrap(), g);
        assert!("nonmax m=4 n=9".parse::<GroupParams>().is_err());
        assert!("max p=4 m=5".parse::<GroupParams>().is_err());
        assert!("max p=3 m=6 k=2 a=1".parse::<GroupParams>().is_err());
        assert!("max p=3 m=4 a=1".parse::<GroupParams>().is_err());
        assert!("nonmax m=6 n=7 foo=1".parse::<GroupParams>().is_err());
    }
}
