//! Finite additive models of quotient rings `Z[X,Y]/I`.
//!
//! Generators with a unit leading coefficient (lex order, `Y > X`) become
//! rewrite rules. The rule-irreducible monomials form a finite, downward
//! closed box, and `Z[X,Y]/I` is presented as `Z^box / L` where `L` is the
//! smallest lattice that contains the images of the generators and the
//! commutators of the multiplication maps and is closed under multiplication
//! by `X` and `Y`. The rules need not be confluent; the closed lattice makes
//! the model exact anyway.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::bipoly::{BiPoly, Monomial};
use crate::jsonnum;
use crate::zlinalg::{AbelianType, IntMat, Lattice};

/// Upper bound on the number of box monomials.
pub const MAX_BOX: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuotientError {
    #[error("no generators given")]
    EmptyGenerators,
    #[error("degree cap {cap} is below the required {required}")]
    CapTooSmall { cap: u32, required: u32 },
    #[error("no bounding powers of X and Y found up to degree {cap}; the quotient may be infinite")]
    PossiblyInfiniteQuotient { cap: u32 },
    #[error("quotient box has {size} monomials, above the limit {MAX_BOX}")]
    BoxTooLarge { size: usize },
    #[error("element has infinite order")]
    InfiniteOrder,
}

/// `lead -> replacement`, derived from an ideal member with leading
/// coefficient `±1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteRule {
    pub lead: Monomial,
    pub replacement: BiPoly,
}

impl RewriteRule {
    /// Orient `g` as a rule when its leading coefficient is a unit.
    pub fn from_poly(g: &BiPoly) -> Option<RewriteRule> {
        let (lead, c) = g.leading_term()?;
        if !c.abs().is_one() {
            return None;
        }
        let rest = g - &BiPoly::monomial(*lead, c.clone());
        Some(RewriteRule {
            lead: *lead,
            replacement: rest.scale(&-c),
        })
    }
}

/// Default degree cap for a generator list.
pub fn default_cap(generators: &[BiPoly]) -> u32 {
    let d = generators.iter().filter_map(BiPoly::degree).max().unwrap_or(0);
    (2 * d + 4).max(8)
}

#[derive(Clone, Debug)]
pub struct QuotientModel {
    generators: Vec<BiPoly>,
    rules: Vec<RewriteRule>,
    /// indices into `rules`, by descending lead then list position
    priority: Vec<usize>,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    relations: Lattice,
    mul_x: IntMat,
    mul_y: IntMat,
    ty: AbelianType,
    degree_cap: u32,
}

/// A generating set of residues chosen from small monomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientBasis {
    /// Monomials with the additive orders of their residues; `0` marks
    /// infinite order.
    pub elements: Vec<(Monomial, BigInt)>,
    /// Whether the group is the direct sum of the cyclic subgroups generated
    /// by `elements`.
    pub direct: bool,
}

impl QuotientBasis {
    pub fn monomials(&self) -> Vec<Monomial> {
        self.elements.iter().map(|(m, _)| *m).collect()
    }

    pub fn orders(&self) -> Vec<BigInt> {
        self.elements.iter().map(|(_, o)| o.clone()).collect()
    }
}

/// JSON export of a model.
#[derive(Clone, Debug, Serialize)]
pub struct QuotientExport {
    pub generators: Vec<String>,
    #[serde(rename = "box")]
    pub box_monomials: Vec<String>,
    pub basis: Vec<String>,
    pub orders: Vec<serde_json::Value>,
    pub direct: bool,
    #[serde(rename = "type")]
    pub ty: AbelianType,
    pub order: serde_json::Value,
    pub relations_hnf: Vec<Vec<serde_json::Value>>,
}

fn select_rule<'a>(rules: &'a [RewriteRule], priority: &[usize], m: &Monomial) -> Option<&'a RewriteRule> {
    priority.iter().map(|&i| &rules[i]).find(|r| r.lead.divides(m))
}

fn priority_order(rules: &[RewriteRule]) -> Vec<usize> {
    let mut p: Vec<usize> = (0..rules.len()).collect();
    p.sort_by(|&a, &b| rules[b].lead.cmp(&rules[a].lead).then(a.cmp(&b)));
    p
}

/// Smallest pure powers of `X` and `Y` among rule leads.
fn bounds(rules: &[RewriteRule]) -> (Option<u32>, Option<u32>) {
    let bx = rules.iter().filter(|r| r.lead.y == 0).map(|r| r.lead.x).min();
    let by = rules.iter().filter(|r| r.lead.x == 0).map(|r| r.lead.y).min();
    (bx, by)
}

/// Unit-lead consequences of the generators found by saturating all
/// products `g·X^i·Y^j` of total degree at most `cap`.
fn saturate(generators: &[BiPoly], cap: u32) -> Vec<RewriteRule> {
    let mut mons: Vec<Monomial> = (0..=cap)
        .flat_map(|y| (0..=cap - y).map(move |x| Monomial::new(x, y)))
        .collect();
    mons.sort_by(|a, b| b.cmp(a));
    let idx: HashMap<Monomial, usize> = mons.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let mut lat = Lattice::zero(mons.len());
    for g in generators {
        let Some(d) = g.degree() else { continue };
        if d > cap {
            continue;
        }
        for j in 0..=cap - d {
            for i in 0..=cap - d - j {
                let mut v = vec![BigInt::zero(); mons.len()];
                for (m, c) in g.terms() {
                    v[idx[&m.times(&Monomial::new(i, j))]] = c.clone();
                }
                lat.insert(v);
            }
        }
    }
    let rows = lat.canonical_rows();
    let unit: Vec<BiPoly> = rows
        .iter()
        .filter(|r| r.iter().find(|x| !x.is_zero()).is_some_and(One::is_one))
        .map(|r| BiPoly::from_terms(r.iter().enumerate().map(|(i, c)| (mons[i], c.clone()))))
        .collect();
    let leads: Vec<Monomial> = unit.iter().map(|p| *p.leading_term().unwrap().0).collect();
    let mut out: Vec<RewriteRule> = unit
        .iter()
        .zip(&leads)
        .filter(|(_, l)| !leads.iter().any(|o| o != *l && o.divides(l)))
        .filter_map(|(p, _)| RewriteRule::from_poly(p))
        .collect();
    out.sort_by_key(|r| r.lead);
    out
}

/// Rewrite `f` to a combination of rule-irreducible monomials.
fn normal_form(rules: &[RewriteRule], priority: &[usize], f: &BiPoly) -> BTreeMap<Monomial, BigInt> {
    let mut work: BTreeMap<Monomial, BigInt> = f.terms().map(|(m, c)| (*m, c.clone())).collect();
    let mut out = BTreeMap::new();
    while let Some((m, c)) = work.pop_last() {
        match select_rule(rules, priority, &m) {
            None => {
                out.insert(m, c);
            }
            Some(rule) => {
                let q = rule.lead.quotient_of(&m).expect("rule lead divides monomial");
                for (rm, rc) in rule.replacement.terms() {
                    let e = work.entry(rm.times(&q)).or_insert_with(BigInt::zero);
                    *e += rc * &c;
                    if e.is_zero() {
                        work.remove(&rm.times(&q));
                    }
                }
            }
        }
    }
    out
}

impl QuotientModel {
    /// Build the model with the default degree cap.
    pub fn new(generators: &[BiPoly]) -> Result<QuotientModel, QuotientError> {
        build_quotient(generators, default_cap(generators))
    }

    pub fn generators(&self) -> &[BiPoly] {
        &self.generators
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    /// Box monomials in coordinate order.
    pub fn box_monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn relations(&self) -> &Lattice {
        &self.relations
    }

    pub fn mul_x(&self) -> &IntMat {
        &self.mul_x
    }

    pub fn mul_y(&self) -> &IntMat {
        &self.mul_y
    }

    pub fn abelian_type(&self) -> &AbelianType {
        &self.ty
    }

    /// Order of the quotient, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        self.ty.order()
    }

    pub fn degree_cap(&self) -> u32 {
        self.degree_cap
    }

    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    /// Coordinates of the rule normal form of `f`.
    pub fn reduce(&self, f: &BiPoly) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.dim()];
        for (m, c) in normal_form(&self.rules, &self.priority, f) {
            v[self.index[&m]] = c;
        }
        v
    }

    /// Ideal membership.
    pub fn contains(&self, f: &BiPoly) -> bool {
        self.relations.contains(&self.reduce(f))
    }

    /// Additive order of the residue of `f`.
    pub fn element_order(&self, f: &BiPoly) -> Result<BigInt, QuotientError> {
        self.relations
            .element_order(&self.reduce(f))
            .ok_or(QuotientError::InfiniteOrder)
    }

    /// Residue of `f` as a polynomial supported on the box, in canonical form
    /// modulo the relation lattice.
    pub fn canonical_residue(&self, f: &BiPoly) -> BiPoly {
        let v = self.relations.reduce(&self.reduce(f));
        BiPoly::from_terms(v.into_iter().enumerate().map(|(i, c)| (self.monomials[i], c)))
    }

    /// Greedy generating set: candidates `1, X, Y, Y^2, …, X^2, …` then the
    /// rest of the box; a candidate is kept when its residue is not in the
    /// subgroup generated by the residues kept so far.
    pub fn basis(&self) -> QuotientBasis {
        // pure powers beyond the box can still be independent residues
        let n = self.monomials.len() as u32;
        let mut candidates = vec![Monomial::ONE, Monomial::new(1, 0)];
        candidates.extend((1..=n).map(|j| Monomial::new(0, j)));
        candidates.extend((2..=n).map(|i| Monomial::new(i, 0)));
        candidates.extend(self.monomials.iter().copied());
        let mut span = self.relations.clone();
        let mut elements = Vec::new();
        for c in candidates {
            if span.is_full_rank() && span.index().is_some_and(|i| i.is_one()) {
                break;
            }
            let v = self.reduce(&BiPoly::monomial(c, 1));
            if span.contains(&v) {
                continue;
            }
            let ord = self.relations.element_order(&v).unwrap_or_else(BigInt::zero);
            span.insert(v);
            elements.push((c, ord));
        }
        let prod: BigInt = elements.iter().map(|(_, o)| o.clone()).product();
        QuotientBasis {
            direct: self.order().is_some_and(|o| o == prod),
            elements,
        }
    }

    pub fn export(&self) -> QuotientExport {
        let basis = self.basis();
        QuotientExport {
            generators: self.generators.iter().map(ToString::to_string).collect(),
            box_monomials: self.monomials.iter().map(ToString::to_string).collect(),
            basis: basis.monomials().iter().map(ToString::to_string).collect(),
            orders: basis.orders().iter().map(jsonnum::to_value).collect(),
            direct: basis.direct,
            ty: self.ty.clone(),
            order: self.order().map_or(serde_json::Value::Null, |o| jsonnum::to_value(&o)),
            relations_hnf: self
                .relations
                .canonical_rows()
                .iter()
                .map(|r| r.iter().map(jsonnum::to_value).collect())
                .collect(),
        }
    }
}

/// Build the finite model of `Z[X,Y]/(generators)`.
pub fn build_quotient(generators: &[BiPoly], degree_cap: u32) -> Result<QuotientModel, QuotientError> {
    if generators.is_empty() {
        return Err(QuotientError::EmptyGenerators);
    }
    let maxdeg = generators.iter().filter_map(BiPoly::degree).max();
    let Some(maxdeg) = maxdeg else {
        return Err(QuotientError::PossiblyInfiniteQuotient { cap: degree_cap });
    };
    if degree_cap < maxdeg + 2 {
        return Err(QuotientError::CapTooSmall {
            cap: degree_cap,
            required: maxdeg + 2,
        });
    }
    let mut rules: Vec<RewriteRule> = generators.iter().filter_map(RewriteRule::from_poly).collect();
    let mut extra: Vec<BiPoly> = Vec::new();
    if !matches!(bounds(&rules), (Some(_), Some(_))) {
        for r in saturate(generators, degree_cap) {
            if !rules.iter().any(|o| o.lead.divides(&r.lead)) {
                extra.push(&BiPoly::monomial(r.lead, 1) - &r.replacement);
                rules.push(r);
            }
        }
    }
    let (Some(bx), Some(by)) = bounds(&rules) else {
        return Err(QuotientError::PossiblyInfiniteQuotient { cap: degree_cap });
    };
    if (bx as usize).saturating_mul(by as usize) > MAX_BOX * 4 {
        return Err(QuotientError::BoxTooLarge {
            size: (bx as usize).saturating_mul(by as usize),
        });
    }
    let mut monomials: Vec<Monomial> = (0..by)
        .flat_map(|y| (0..bx).map(move |x| Monomial::new(x, y)))
        .filter(|m| !rules.iter().any(|r| r.lead.divides(m)))
        .collect();
    if monomials.len() > MAX_BOX {
        return Err(QuotientError::BoxTooLarge { size: monomials.len() });
    }
    monomials.sort();
    let index: HashMap<Monomial, usize> = monomials.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let priority = priority_order(&rules);
    let dim = monomials.len();

    let reduce = |f: &BiPoly| -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); dim];
        for (m, c) in normal_form(&rules, &priority, f) {
            v[index[&m]] = c;
        }
        v
    };
    let column_matrix = |shift: Monomial| -> IntMat {
        let cols: Vec<Vec<BigInt>> = monomials
            .iter()
            .map(|b| reduce(&BiPoly::monomial(b.times(&shift), 1)))
            .collect();
        IntMat::from_columns(dim, &cols)
    };
    let mul_x = column_matrix(Monomial::new(1, 0));
    let mul_y = column_matrix(Monomial::new(0, 1));

    let mut relations = Lattice::zero(dim);
    if dim > 0 {
        let one = reduce(&BiPoly::one());
        // f(MX, MY)·e_1, evaluating each monomial as MX^i (MY^j e_1)
        let theta = |f: &BiPoly| -> Vec<BigInt> {
            let mut acc = vec![BigInt::zero(); dim];
            let mut y_powers: Vec<Vec<BigInt>> = vec![one.clone()];
            for (m, c) in f.terms() {
                while y_powers.len() <= m.y as usize {
                    let next = mul_y.mul_vec(y_powers.last().unwrap());
                    y_powers.push(next);
                }
                let mut v = y_powers[m.y as usize].clone();
                for _ in 0..m.x {
                    v = mul_x.mul_vec(&v);
                }
                for (a, b) in acc.iter_mut().zip(v) {
                    *a += c * b;
                }
            }
            acc
        };
        for g in generators.iter().chain(&extra) {
            relations.insert(reduce(g));
            relations.insert(theta(g));
        }
        let comm = mul_x.mul(&mul_y).sub(&mul_y.mul(&mul_x));
        relations.extend(comm.columns());
        close_under(&mut relations, &[&mul_x, &mul_y]);
    }
    let ty = relations.quotient_type();
    Ok(QuotientModel {
        generators: generators.to_vec(),
        rules,
        priority,
        monomials,
        index,
        relations,
        mul_x,
        mul_y,
        ty,
        degree_cap,
    })
}

/// Enlarge `l` until it is mapped into itself by every matrix in `ops`.
pub fn close_under(l: &mut Lattice, ops: &[&IntMat]) {
    loop {
        let mut changed = false;
        for r in l.canonical_rows() {
            for op in ops {
                changed |= l.insert(op.mul_vec(&r));
            }
        }
        if !changed {
            return;
        }
    }
}

/// Mutual inclusion of two ideals.
pub fn ideal_equal(gens_a: &[BiPoly], gens_b: &[BiPoly], degree_cap: u32) -> Result<bool, QuotientError> {
    let a = build_quotient(gens_a, degree_cap.max(default_cap(gens_a)))?;
    let b = build_quotient(gens_b, degree_cap.max(default_cap(gens_b)))?;
    Ok(gens_a.iter().all(|g| b.contains(g)) && gens_b.iter().all(|g| a.contains(g)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bipoly::parse_poly_list;

    fn model(s: &str) -> QuotientModel {
        QuotientModel::new(&parse_poly_list(s).unwrap()).unwrap()
    }

    fn t(f: &[u64]) -> AbelianType {
        AbelianType::from_u64s(f)
    }

    fn mono(x: u32, y: u32) -> Monomial {
        Monomial::new(x, y)
    }

    #[test]
    fn maximal_ideal() {
        let q = model("X,Y,3");
        assert_eq!(q.box_monomials(), &[Monomial::ONE]);
        assert_eq!(q.abelian_type(), &t(&[3]));
    }

    #[test]
    fn examples_from_theorems() {
        assert_eq!(model("X^3,Y^2,X*Y,X^2+3*X+3").abelian_type(), &t(&[9, 3, 3]));
        // without the trace polynomial nothing forces 3*X into the ideal
        let q = model("X^2-Y^2,X*Y,9");
        assert_eq!(q.abelian_type(), &t(&[9, 9, 9, 9]));
        let q = model("X^2-Y^2,X*Y,9,X^2+3*X+3+3*Y+Y^2");
        assert_eq!(q.abelian_type(), &t(&[9, 3, 3]));
        let b = q.basis();
        assert_eq!(b.monomials(), vec![mono(0, 0), mono(1, 0), mono(0, 1)]);
        assert!(b.direct);
        let b = model("X^2+Y^2,X*Y,3").basis();
        assert_eq!(b.monomials(), vec![mono(0, 0), mono(1, 0), mono(0, 1), mono(0, 2)]);
        let q = model("X^2,Y^2,X*Y+3");
        assert_eq!(q.abelian_type(), &t(&[9, 3, 3]));
        let b = q.basis();
        assert_eq!(b.monomials(), vec![mono(0, 0), mono(1, 0), mono(0, 1)]);
        assert_eq!(b.orders(), vec![9.into(), 3.into(), 3.into()] as Vec<BigInt>);
    }

    #[test]
    fn reduce_examples() {
        let q = model("X^4,Y,X^2+3*X+3");
        assert!(q.reduce(&"Y*X".parse().unwrap()).iter().all(Zero::is_zero));
        let r = q.reduce(&"X^2".parse().unwrap());
        let expect = q.reduce(&"-3*X-3".parse().unwrap());
        assert_eq!(r, expect);
        assert!(q.reduce(&BiPoly::zero()).iter().all(Zero::is_zero));
    }

    #[test]
    fn membership_examples() {
        let q = model("X^4,Y,X^2+3*X+3");
        assert!(q.contains(&"X^4".parse().unwrap()));
        assert!(!q.contains(&"X^3".parse().unwrap()));
        let b = q.basis();
        assert_eq!(b.monomials(), vec![mono(0, 0), mono(1, 0)]);
        assert_eq!(b.orders(), vec![9.into(), 9.into()] as Vec<BigInt>);
        let q = model("X^3,Y^2,X*Y,X^2+3*X+3");
        assert!(q.contains(&"X*Y".parse().unwrap()));
    }

    #[test]
    fn order_examples() {
        // R_{5,3}
        let q = model("X^5,Y^3,X*Y,X^2+3*X+3+3*Y+Y^2");
        assert_eq!(q.element_order(&BiPoly::one()).unwrap(), BigInt::from(27));
        assert_eq!(q.element_order(&"X^4".parse().unwrap()).unwrap(), BigInt::from(3));
        // U_{5,3}(1)
        let q = model("X^5,Y^3-X^4,X*Y,X^2+3*X+3+3*Y+Y^2");
        assert_eq!(q.element_order(&"Y^3".parse().unwrap()).unwrap(), BigInt::from(3));
    }

    #[test]
    fn r43_basis() {
        let q = model("X^4,Y^3,X*Y,X^2+3*X+3+3*Y+Y^2");
        assert_eq!(
            q.basis().monomials(),
            vec![mono(0, 0), mono(1, 0), mono(0, 1), mono(0, 2)]
        );
    }

    #[test]
    fn ideal_equal_examples() {
        let a = parse_poly_list("X,Y,3").unwrap();
        let b = parse_poly_list("Y,X,3").unwrap();
        let c = parse_poly_list("X,Y,9").unwrap();
        assert!(ideal_equal(&a, &b, 8).unwrap());
        assert!(!ideal_equal(&a, &c, 8).unwrap());
        let p = parse_poly_list("X^3,X*Y,X^2+3*X+3+3*Y+Y^2,Y^2-X^2").unwrap();
        let q = parse_poly_list("X^2-Y^2,X*Y,9").unwrap();
        assert!(!ideal_equal(&p, &q, 8).unwrap());
        let q = parse_poly_list("X^2-Y^2,X*Y,9,X^2+3*X+3+3*Y+Y^2").unwrap();
        assert!(ideal_equal(&p, &q, 8).unwrap());
    }

    #[test]
    fn errors() {
        let x = parse_poly_list("X").unwrap();
        assert!(matches!(
            QuotientModel::new(&x),
            Err(QuotientError::PossiblyInfiniteQuotient { .. })
        ));
        let g = parse_poly_list("X^5,Y").unwrap();
        assert!(matches!(
            build_quotient(&g, 6),
            Err(QuotientError::CapTooSmall { required: 7, .. })
        ));
        assert!(matches!(build_quotient(&[], 8), Err(QuotientError::EmptyGenerators)));
        let z = parse_poly_list("X^2,Y^2").unwrap();
        let q = QuotientModel::new(&z).unwrap();
        assert_eq!(q.abelian_type().free_rank, 4);
        assert!(q.element_order(&BiPoly::one()).is_err());
    }

    #[test]
    fn unit_ideal() {
        let q = model("X-1,3,Y");
        assert_eq!(q.abelian_type(), &t(&[3]));
        assert!(q.contains(&"X^5-1".parse().unwrap()));
        let q = model("X-1,2,3,Y");
        assert!(q.contains(&BiPoly::one()));
        let q = model("1");
        assert_eq!(q.dim(), 0);
        assert!(q.basis().elements.is_empty());
    }
}
