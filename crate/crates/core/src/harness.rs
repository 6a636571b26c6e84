//! Verification campaigns over parameter grids and their reports.
//!
//! Every campaign point is evaluated independently; results come back in the
//! order the points were enumerated, whether or not they ran in parallel.

use std::collections::BTreeMap;
use std::fmt;
use std::io::{self, Write};
use std::ops::RangeInclusive;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bipoly::{parse_poly_list, BiPoly, Monomial};
use crate::families::{
    nearly_homocyclic, predicted_annihilator, predicted_derived_type, IdealFamily, EXCEPTIONAL_ROWS,
};
use crate::groups::{
    annihilator_contains, psi, schreier_check, verify_annihilator, verify_surjectivity, GroupError, GroupModel,
    GroupParams, MaxClassParams, NonMaxParams,
};
use crate::quotient::{build_quotient, default_cap, ideal_equal, QuotientModel};
use crate::zlinalg::AbelianType;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, PartialOrd, Ord)]
pub enum Verdict {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    NoPrediction,
    InconsistentPresentation,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::NoPrediction => "NoPrediction",
            Verdict::InconsistentPresentation => "InconsistentPresentation",
        })
    }
}

/// Outcome of one check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub claim: String,
    pub instance: String,
    pub expected: String,
    pub computed: String,
    pub verdict: Verdict,
    #[serde(skip)]
    pub runtime_ms: u64,
}

impl VerificationReport {
    pub fn new(claim: impl Into<String>, instance: impl Into<String>, expected: impl Into<String>) -> Self {
        VerificationReport {
            claim: claim.into(),
            instance: instance.into(),
            expected: expected.into(),
            computed: String::new(),
            verdict: Verdict::Fail,
            runtime_ms: 0,
        }
    }

    /// Report comparing two rendered values.
    pub fn compare(
        claim: impl Into<String>,
        instance: impl Into<String>,
        expected: impl Into<String>,
        computed: impl Into<String>,
    ) -> Self {
        let expected = expected.into();
        let computed = computed.into();
        let verdict = if expected == computed {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        VerificationReport {
            claim: claim.into(),
            instance: instance.into(),
            expected,
            computed,
            verdict,
            runtime_ms: 0,
        }
    }

    pub fn with_verdict(mut self, verdict: Verdict) -> Self {
        self.verdict = verdict;
        self
    }

    pub fn with_computed(mut self, computed: impl Into<String>) -> Self {
        self.computed = computed.into();
        self
    }

    pub fn with_claim(mut self, claim: impl Into<String>) -> Self {
        self.claim = claim.into();
        self
    }

    pub fn timed(mut self, start: Stopwatch) -> Self {
        self.runtime_ms = start.elapsed_ms();
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// Wall-clock start time; inert in the browser, where `Instant` panics.
#[derive(Clone, Copy, Debug)]
pub struct Stopwatch(Option<Instant>);

impl Stopwatch {
    pub fn start() -> Self {
        if cfg!(all(target_arch = "wasm32", target_os = "unknown")) {
            Stopwatch(None)
        } else {
            Stopwatch(Some(Instant::now()))
        }
    }

    pub fn elapsed_ms(&self) -> u64 {
        self.0.map_or(0, |t| t.elapsed().as_millis() as u64)
    }
}

/// Campaign names accepted by the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CampaignKind {
    MaxClass,
    NonMax,
    Families,
    Tables,
    Schreier,
    OrderFormulas,
    CrossOracle,
}

impl CampaignKind {
    pub const ALL: [CampaignKind; 7] = [
        CampaignKind::MaxClass,
        CampaignKind::NonMax,
        CampaignKind::Families,
        CampaignKind::Tables,
        CampaignKind::Schreier,
        CampaignKind::OrderFormulas,
        CampaignKind::CrossOracle,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            CampaignKind::MaxClass => "maxclass",
            CampaignKind::NonMax => "nonmax",
            CampaignKind::Families => "families",
            CampaignKind::Tables => "tables",
            CampaignKind::Schreier => "schreier",
            CampaignKind::OrderFormulas => "orderformulas",
            CampaignKind::CrossOracle => "crossoracle",
        }
    }
}

impl fmt::Display for CampaignKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CampaignKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm: String = s.chars().filter(|c| *c != '_' && *c != '-').collect();
        CampaignKind::ALL
            .into_iter()
            .find(|k| k.as_str() == norm)
            .ok_or_else(|| {
                let names: Vec<&str> = CampaignKind::ALL.iter().map(|k| k.as_str()).collect();
                format!("unknown campaign '{s}' (expected one of {})", names.join(", "))
            })
    }
}

/// Knobs shared by all campaigns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CampaignConfig {
    pub seed: u64,
    /// Largest number of `a`-vectors tried per `(p, m, k)` before sampling.
    pub a_sample: usize,
    /// Random polynomials per instance in the cross-oracle campaign.
    pub oracle_samples: usize,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        CampaignConfig {
            seed: 0x6d65_7461,
            a_sample: 24,
            oracle_samples: 500,
        }
    }
}

/// Evaluate `f` on every point and concatenate the results in point order.
pub fn evaluate<T, F>(points: &[T], f: F) -> Vec<VerificationReport>
where
    T: Sync,
    F: Fn(&T) -> Vec<VerificationReport> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        let parts: Vec<Vec<VerificationReport>> = points.par_iter().map(&f).collect();
        parts.into_iter().flatten().collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        points.iter().flat_map(f).collect()
    }
}

fn inconsistent(claim: &str, params: &GroupParams, e: &GroupError) -> VerificationReport {
    let expected = BigInt::from(params.p()).pow(params.n() - 2).to_string();
    VerificationReport::new(claim, params.to_string(), format!("|G'| = {expected}"))
        .with_verdict(match e {
            GroupError::InconsistentPresentation { .. } => Verdict::InconsistentPresentation,
            _ => Verdict::NoPrediction,
        })
        .with_computed(e.to_string())
}

fn annihilator_report(claim: &str, g: &GroupModel) -> VerificationReport {
    let start = Stopwatch::start();
    match predicted_annihilator(&g.meta) {
        Ok(pred) => {
            let mut r = verify_annihilator(g, &pred.generators()).with_claim(claim);
            r.expected = format!("{pred} = {}", r.expected);
            r.timed(start)
        }
        Err(e) => VerificationReport::new(claim, g.meta.to_string(), "-")
            .with_verdict(Verdict::NoPrediction)
            .with_computed(e.to_string()),
    }
}

fn derived_type_report(claim: &str, g: &GroupModel) -> VerificationReport {
    match predicted_derived_type(&g.meta) {
        Ok(t) => VerificationReport::compare(claim, g.meta.to_string(), t.to_string(), g.derived_type().to_string()),
        Err(e) => VerificationReport::new(claim, g.meta.to_string(), "-")
            .with_verdict(Verdict::NoPrediction)
            .with_computed(e.to_string()),
    }
}

fn surjectivity_report(g: &GroupModel) -> VerificationReport {
    let start = Stopwatch::start();
    let ok = verify_surjectivity(g);
    VerificationReport::compare("surjectivity", g.meta.to_string(), "true", ok.to_string()).timed(start)
}

/// All `a`-vectors of defect `k` for prime `p`: entries in `0..p`, last entry
/// non-zero. Sampled down to `limit` vectors when the grid is larger.
fn a_vectors(p: u64, k: u32, limit: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<i64>> {
    if k == 0 {
        return vec![vec![]];
    }
    let p = p as i64;
    let total = (p as u128).pow(k - 1) * (p as u128 - 1);
    if total <= limit as u128 {
        let mut out: Vec<Vec<i64>> = vec![vec![]];
        for pos in 0..k {
            let lo = if pos + 1 == k { 1 } else { 0 };
            out = out
                .into_iter()
                .flat_map(|v| {
                    (lo..p).map(move |x| {
                        let mut w = v.clone();
                        w.push(x);
                        w
                    })
                })
                .collect();
        }
        return out;
    }
    let mut seen = std::collections::BTreeSet::new();
    while seen.len() < limit {
        let mut v: Vec<i64> = (0..k - 1).map(|_| rng.gen_range(0..p)).collect();
        v.push(rng.gen_range(1..p));
        seen.insert(v);
    }
    seen.into_iter().collect()
}

/// The maximal-class parameter grid: the full `(alpha, beta, gamma)` grid for
/// `p = 3`, otherwise every defect with `w, z` in `{0, 1}` and all (or a
/// seeded sample of) `a`-vectors.
pub fn max_class_points(p_set: &[u64], m_range: RangeInclusive<u32>, cfg: &CampaignConfig) -> Vec<MaxClassParams> {
    let mut out = Vec::new();
    for &p in p_set {
        for m in m_range.clone() {
            if p == 3 {
                for w in -1..=1 {
                    for z in -1..=1 {
                        for gamma in -1..=1 {
                            let g = MaxClassParams::p3(m, w, z, gamma);
                            if g.validate().is_ok() {
                                out.push(g);
                            }
                        }
                    }
                }
                continue;
            }
            let kmax = if m <= 4 {
                0
            } else {
                (m - 4).min(p.saturating_sub(2) as u32)
            };
            for k in 0..=kmax {
                let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ (p << 40) ^ ((m as u64) << 20) ^ k as u64);
                let avs = a_vectors(p, k, cfg.a_sample, &mut rng);
                for w in 0..=1 {
                    for z in 0..=1 {
                        for a in &avs {
                            let g = MaxClassParams::new(p, m, w, z, a.clone());
                            if g.validate().is_ok() {
                                out.push(g);
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// Annihilator, derived type and surjectivity (plus the Schreier congruences
/// for `p = 3`) for every maximal-class grid point.
pub fn run_max_class_campaign(
    p_set: &[u64],
    m_range: RangeInclusive<u32>,
    cfg: &CampaignConfig,
) -> Vec<VerificationReport> {
    let points = max_class_points(p_set, m_range, cfg);
    evaluate(&points, |params| {
        let gp = GroupParams::Max(params.clone());
        let g = match GroupModel::build(&gp) {
            Ok(g) => g,
            Err(e) => return vec![inconsistent("maxclass.order", &gp, &e)],
        };
        let mut out = vec![
            annihilator_report("maxclass.annihilator", &g),
            derived_type_report("maxclass.derived_type", &g),
            surjectivity_report(&g),
        ];
        if params.p == 3 {
            out.extend(schreier_check(&g).ok().map(|r| r.with_claim("maxclass.schreier")));
        }
        out
    })
}

/// Schreier congruences for `p = 3` over every valid `(alpha, beta, gamma)`.
pub fn run_schreier_campaign(m_range: RangeInclusive<u32>) -> Vec<VerificationReport> {
    let points: Vec<MaxClassParams> = m_range
        .flat_map(|m| {
            (-1..=1)
                .flat_map(move |w| (-1..=1).flat_map(move |z| (-1..=1).map(move |c| MaxClassParams::p3(m, w, z, c))))
        })
        .filter(|g| g.validate().is_ok())
        .collect();
    evaluate(&points, |params| {
        let gp = GroupParams::Max(params.clone());
        match GroupModel::build(&gp) {
            Ok(g) => schreier_check(&g).into_iter().collect(),
            Err(e) => vec![inconsistent("schreier", &gp, &e)],
        }
    })
}

/// All `(m, n)` with `4 <= m < n <= 2m - 3` and `n` in the range.
pub fn nonmax_shapes(n_range: RangeInclusive<u32>) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for n in n_range {
        for m in 4..n {
            if n + 3 <= 2 * m {
                out.push((m, n));
            }
        }
    }
    out
}

/// Every `(alpha, beta, gamma, delta)` in `{-1, 0, 1}^4` for each shape and
/// each `rho`.
pub fn nonmax_points(shapes: &[(u32, u32)], rhos: &[i64]) -> Vec<NonMaxParams> {
    let mut out = Vec::new();
    for &(m, n) in shapes {
        for &rho in rhos {
            for a in -1..=1 {
                for b in -1..=1 {
                    for c in -1..=1 {
                        for d in -1..=1 {
                            let g = NonMaxParams::new(m, n, a, b, c, d, rho);
                            if g.validate().is_ok() {
                                out.push(g);
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// Tuples of the `m = 4` table, as `(alpha, beta, gamma, delta)`.
pub const SMALL_BICYCLIC_ROWS: [(&str, &str, [i64; 4]); 7] = [
    ("<243,3>", "b.10", [0, 0, 0, 0]),
    ("<243,8>", "c.21", [0, 0, 0, 1]),
    ("<243,6>", "c.18", [0, -1, 0, 1]),
    ("<243,5>", "D.10", [0, 0, -1, 1]),
    ("<243,9>", "G.19", [0, -1, -1, 0]),
    ("<243,4>", "H.4", [1, 1, 1, 1]),
    ("<243,7>", "D.5", [1, 1, -1, 1]),
];

/// Tuples for `m >= 5`, `e = 3`, `rho = 0`, with the sign alternatives
/// expanded, as `(alpha, beta, gamma, delta)`.
pub fn second_coclass_rows() -> Vec<(&'static str, [i64; 4])> {
    let mut out = vec![("b.10", [0, 0, 0, 0])];
    for s in [1, -1] {
        out.push(("d.25", [0, 0, s, 0]));
    }
    out.push(("d.23", [1, 0, 0, 0]));
    for s in [1, -1] {
        out.push(("d.19", [1, 0, s, 0]));
    }
    out.push(("c.21", [0, 0, 0, 1]));
    for s in [1, -1] {
        out.push(("E.9", [0, 0, s, 1]));
    }
    for s in [1, -1] {
        out.push(("G.16", [s, 0, 0, 1]));
    }
    out.push(("E.8", [1, 0, -1, 1]));
    out.push(("c.18", [0, -1, 0, 1]));
    for s in [1, -1] {
        out.push(("E.14", [0, -1, s, 1]));
    }
    out.push(("E.6", [1, -1, 1, 1]));
    for s in [1, -1] {
        out.push(("H.4", [s, -1, -s, 1]));
    }
    out
}

fn tabulated_y_exclusion(g: &NonMaxParams) -> bool {
    let t = [g.alpha, g.beta, g.gamma, g.delta];
    if g.m == 4 {
        SMALL_BICYCLIC_ROWS.iter().any(|(_, _, r)| *r == t)
    } else {
        second_coclass_rows().iter().any(|(_, r)| *r == t)
    }
}

/// Smallest `a <= limit` with `v^a` in the annihilator.
fn min_power(g: &GroupModel, var: fn(u32) -> BiPoly, limit: u32) -> Option<u32> {
    (0..=limit).find(|&a| annihilator_contains(g, &var(a)))
}

fn min_exponent_report(
    claim: &str,
    g: &GroupModel,
    var: fn(u32) -> BiPoly,
    expected: u32,
    name: &str,
) -> VerificationReport {
    let computed = min_power(g, var, expected + 2);
    VerificationReport::compare(
        claim,
        g.meta.to_string(),
        format!("{name}^{expected}"),
        computed.map_or_else(
            || format!("none up to {name}^{}", expected + 2),
            |a| format!("{name}^{a}"),
        ),
    )
}

/// Minimal powers of `X` and `Y` in the annihilator of a non-maximal group,
/// where the exclusion half is settled for the given tuple.
pub fn minimal_exponent_reports(g: &GroupModel) -> Vec<VerificationReport> {
    let GroupParams::NonMax(p) = &g.meta else {
        return Vec::new();
    };
    let (m, e) = (p.m, p.e());
    let rb = p.rho * p.beta;
    let mut out = Vec::new();
    // X: the exclusion is general for m >= 5 and tabulated for m = 4
    if m >= 5
        || SMALL_BICYCLIC_ROWS
            .iter()
            .any(|(_, _, r)| *r == [p.alpha, p.beta, p.gamma, p.delta])
    {
        let expect = if m == 5 && rb == 1 { m - 3 } else { m - 2 };
        out.push(min_exponent_report("nonmax.min_power_x", g, BiPoly::x_pow, expect, "X"));
    } else {
        let ok = annihilator_contains(g, &BiPoly::x_pow(m - 2));
        out.push(VerificationReport::compare(
            "nonmax.min_power_x",
            g.meta.to_string(),
            format!("X^{} in ideal", m - 2),
            if ok {
                format!("X^{} in ideal", m - 2)
            } else {
                format!("X^{} not in ideal", m - 2)
            },
        ));
    }
    // Y
    let settled = if p.rho == 0 {
        e >= 4 || tabulated_y_exclusion(p)
    } else {
        e >= 4 || (e == 3 && p.beta != 1) || (m == 5 && (p.beta, p.delta, p.rho) == (1, 1, 1))
    };
    let expect = match (p.rho == 0, e) {
        (true, _) => e - 1,
        (false, 3) if p.beta == 1 => 2,
        (false, _) => e,
    };
    if settled {
        out.push(min_exponent_report("nonmax.min_power_y", g, BiPoly::y_pow, expect, "Y"));
    } else {
        let ok = annihilator_contains(g, &BiPoly::y_pow(expect));
        out.push(VerificationReport::compare(
            "nonmax.min_power_y",
            g.meta.to_string(),
            format!("Y^{expect} in ideal"),
            if ok {
                format!("Y^{expect} in ideal")
            } else {
                format!("Y^{expect} not in ideal")
            },
        ));
    }
    out
}

/// Annihilator, derived type, surjectivity and minimal powers for every
/// non-maximal grid point.
pub fn run_nonmax_campaign(shapes: &[(u32, u32)], rhos: &[i64]) -> Vec<VerificationReport> {
    let points = nonmax_points(shapes, rhos);
    evaluate(&points, |params| {
        let gp = GroupParams::NonMax(params.clone());
        let g = match GroupModel::build(&gp) {
            Ok(g) => g,
            Err(e) => return vec![inconsistent("nonmax.order", &gp, &e)],
        };
        let mut out = vec![
            annihilator_report("nonmax.annihilator", &g),
            derived_type_report("nonmax.derived_type", &g),
            surjectivity_report(&g),
        ];
        out.extend(minimal_exponent_reports(&g));
        out
    })
}

/// `(alpha, gamma)` sweep used for the exceptional `m = 5` groups.
pub fn exceptional_instances(beta: i64, delta: i64, rho: i64) -> Vec<NonMaxParams> {
    let mut out = Vec::new();
    for alpha in -1..=1 {
        for gamma in -1..=1 {
            out.push(NonMaxParams::new(5, 6, alpha, beta, gamma, delta, rho));
        }
    }
    out
}

fn build_all(points: &[NonMaxParams]) -> (Vec<GroupModel>, usize) {
    let mut models = Vec::new();
    let mut rejected = 0;
    for p in points {
        match GroupModel::build(&GroupParams::NonMax(p.clone())) {
            Ok(g) => models.push(g),
            Err(_) => rejected += 1,
        }
    }
    (models, rejected)
}

fn symbol_combo(g: &GroupModel, terms: &[(&str, i64)]) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); g.dim()];
    for (name, c) in terms {
        let s = g.symbol_vec(name).expect("known symbol");
        for (a, b) in v.iter_mut().zip(s) {
            *a += b * c;
        }
    }
    g.reduce(&v)
}

fn power_text(terms: &[(&str, i64)]) -> String {
    let parts: Vec<String> = terms
        .iter()
        .filter(|(_, c)| *c != 0)
        .map(|(s, c)| if *c == 1 { s.to_string() } else { format!("{s}^{c}") })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// One report for a table row: `f` must map to the given symbol product for
/// every accepted model.
fn psi_row_report(
    claim: &str,
    label: &str,
    models: &[GroupModel],
    rejected: usize,
    f: &BiPoly,
    terms: impl Fn(&GroupModel) -> Vec<(String, i64)>,
) -> VerificationReport {
    let start = Stopwatch::start();
    let mut expected_text = None;
    let mut bad = Vec::new();
    for g in models {
        let t = terms(g);
        let tr: Vec<(&str, i64)> = t.iter().map(|(s, c)| (s.as_str(), *c)).collect();
        expected_text.get_or_insert_with(|| power_text(&tr));
        let want = symbol_combo(g, &tr);
        let got = psi(g, f);
        if want != got {
            bad.push(format!("{}: {}", g.meta, g.describe(&got)));
        }
    }
    let expected = format!("psi({f}) = {}", expected_text.unwrap_or_else(|| "-".into()));
    let mut r = VerificationReport::new(claim, label, expected);
    if models.is_empty() {
        r.computed = format!("no accepted model ({rejected} rejected)");
        r.verdict = Verdict::InconsistentPresentation;
    } else if bad.is_empty() {
        r.computed = format!("agrees on {} models", models.len());
        r.verdict = Verdict::Pass;
    } else {
        r.computed = format!("{} of {} disagree, e.g. {}", bad.len(), models.len(), bad[0]);
    }
    r.timed(start)
}

fn item3_generators(beta: i64, delta: i64, rho: i64) -> Vec<BiPoly> {
    let c = 1 - rho * beta;
    if c == 0 {
        return parse_poly_list("X^2,Y^2,X*Y+3").expect("literal");
    }
    let x2 = BiPoly::x_pow(2);
    vec![
        BiPoly::x_pow(3),
        &(&BiPoly::x() * &BiPoly::y()) - &x2.scale(&BigInt::from(c * rho * delta)),
        &crate::bipoly::trace_poly_xy() + &x2.scale(&BigInt::from(c * rho * beta)),
        &BiPoly::y_pow(2) - &x2.scale(&BigInt::from((1 - beta) * c * rho)),
    ]
}

fn list_text(gens: &[BiPoly]) -> String {
    let g: Vec<String> = gens.iter().map(ToString::to_string).collect();
    format!("({})", g.join(", "))
}

/// One report per row of the six parameter and annihilator tables.
pub fn reproduce_tables() -> Vec<VerificationReport> {
    let mut out = Vec::new();
    // psi(X^2) for m = 5, n = 6
    for row in EXCEPTIONAL_ROWS.iter() {
        let (models, rej) = build_all(&exceptional_instances(row.beta, row.delta, row.rho));
        let label = format!(
            "{} {} beta={} delta={} rho={}",
            row.groups, row.tkt, row.beta, row.delta, row.rho
        );
        let e = row.rho * row.beta - 1;
        out.push(psi_row_report(
            "table1",
            &label,
            &models,
            rej,
            &BiPoly::x_pow(2),
            |_| vec![("sigma4".into(), e)],
        ));
    }
    {
        let points: Vec<NonMaxParams> = nonmax_points(&[(5, 6)], &[0]);
        let (models, rej) = build_all(&points);
        out.push(psi_row_report(
            "table1",
            "generally rho=0",
            &models,
            rej,
            &BiPoly::x_pow(2),
            |_| vec![("sigma4".into(), -1)],
        ));
    }
    // psi(X) and psi(Y) for m = 4, n = 5
    for (claim, f) in [("table2", BiPoly::x()), ("table3", BiPoly::y())] {
        for (id, tkt, [a, b, c, d]) in SMALL_BICYCLIC_ROWS {
            let (models, rej) = build_all(&[NonMaxParams::new(4, 5, a, b, c, d, 0)]);
            let label = format!("{id} {tkt} alpha={a} beta={b} gamma={c} delta={d}");
            let terms = move |_: &GroupModel| -> Vec<(String, i64)> {
                if claim == "table2" {
                    vec![("sigma3".into(), c - 1), ("tau3".into(), d)]
                } else {
                    vec![("sigma3".into(), -a), ("tau3".into(), 1 - b)]
                }
            };
            out.push(psi_row_report(claim, &label, &models, rej, &f, terms));
        }
    }
    // psi(Y) for m >= 5, e = 3, rho = 0
    for (tkt, [a, b, c, d]) in second_coclass_rows() {
        let points: Vec<NonMaxParams> = (5..=8).map(|m| NonMaxParams::new(m, m + 1, a, b, c, d, 0)).collect();
        let (models, rej) = build_all(&points);
        let label = format!("{tkt} alpha={a} beta={b} gamma={c} delta={d} m=5..8");
        out.push(psi_row_report("table4", &label, &models, rej, &BiPoly::y(), |g| {
            vec![(format!("sigma{}", g.meta.m() - 1), -a), ("tau3".into(), 1 - b)]
        }));
    }
    // annihilators and derived subgroups of the exceptional groups
    for row in EXCEPTIONAL_ROWS.iter() {
        let start = Stopwatch::start();
        let label = format!(
            "{} {} beta={} delta={} rho={}",
            row.groups, row.tkt, row.beta, row.delta, row.rho
        );
        let literal = parse_poly_list(row.ideal).expect("table literal");
        let (models, rej) = build_all(&exceptional_instances(row.beta, row.delta, row.rho));
        let failing: Vec<String> = models
            .iter()
            .filter(|g| !verify_annihilator(g, &literal).passed())
            .map(|g| g.meta.to_string())
            .collect();
        let item3 = item3_generators(row.beta, row.delta, row.rho);
        let same = ideal_equal(&literal, &item3, 8).unwrap_or(false);
        let mut r = VerificationReport::new("table5", label.clone(), list_text(&literal));
        r.computed = if failing.is_empty() {
            format!("equals the annihilator of all {} models", models.len())
        } else {
            let ann = &models[0];
            let q = build_quotient(&literal, default_cap(&literal)).expect("finite literal");
            format!(
                "differs on {} of {} models: quotient {} but |G'| type {}; generator list {} {} this list",
                failing.len(),
                models.len(),
                q.abelian_type(),
                ann.derived_type(),
                list_text(&item3),
                if same { "equals" } else { "does not equal" }
            )
        };
        r.verdict = if models.is_empty() {
            Verdict::InconsistentPresentation
        } else if failing.is_empty() {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        let _ = rej;
        out.push(r.timed(start));

        let expected_type = AbelianType::from_u64s(row.derived_type);
        let bad: Vec<String> = models
            .iter()
            .filter(|g| g.derived_type() != &expected_type)
            .map(|g| format!("{}: {}", g.meta, g.derived_type()))
            .collect();
        let mut r = VerificationReport::new("table6.type", label.clone(), expected_type.to_string());
        r.computed = match bad.first() {
            None => format!("{} on all {} models", expected_type, models.len()),
            Some(b) => format!("{} of {} differ, e.g. {b}", bad.len(), models.len()),
        };
        r.verdict = if bad.is_empty() && !models.is_empty() {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        out.push(r);

        let q = build_quotient(&literal, default_cap(&literal)).expect("finite literal");
        let b = q.basis();
        let basis: Vec<String> = b.monomials().iter().map(ToString::to_string).collect();
        let orders: Vec<String> = b.orders().iter().map(ToString::to_string).collect();
        let expected_orders: Vec<String> = row.derived_type.iter().map(ToString::to_string).collect();
        out.push(VerificationReport::compare(
            "table6.basis",
            label,
            format!("basis ({}) orders ({})", row.basis, expected_orders.join(",")),
            format!("basis ({}) orders ({})", basis.join(","), orders.join(",")),
        ));
    }
    out
}

fn ord3(e: u32) -> BigInt {
    BigInt::from(3).pow(e)
}

fn order_mismatches(q: &QuotientModel, cases: &[(BiPoly, BigInt)]) -> Vec<String> {
    cases
        .iter()
        .filter_map(|(f, want)| match q.element_order(f) {
            Ok(got) if &got == want => None,
            Ok(got) => Some(format!("ord({f}) = {got}, expected {want}")),
            Err(e) => Some(format!("ord({f}): {e}")),
        })
        .collect()
}

fn order_report(claim: &str, instance: String, q: &QuotientModel, cases: &[(BiPoly, BigInt)]) -> VerificationReport {
    let bad = order_mismatches(q, cases);
    let expected = format!("{} closed-form orders", cases.len());
    let mut r = VerificationReport::new(claim, instance, expected);
    if bad.is_empty() {
        r.computed = format!("{} closed-form orders", cases.len());
        r.verdict = Verdict::Pass;
    } else {
        r.computed = format!("{} mismatches: {}", bad.len(), bad.join("; "));
    }
    r
}

/// Element orders in template quotients and in maximal-class quotients
/// against their closed forms.
pub fn run_order_formula_campaign(
    mu_range: RangeInclusive<u32>,
    nu_min: u32,
    p_set: &[u64],
    cfg: &CampaignConfig,
) -> Vec<VerificationReport> {
    let mut templates = Vec::new();
    for mu in mu_range.clone() {
        for nu in nu_min.max(3)..=mu {
            for beta in -1..=1 {
                for delta in -1..=1 {
                    for rho in -1..=1 {
                        templates.push(IdealFamily::s(mu, nu, beta, delta, rho));
                    }
                }
            }
        }
    }
    let mut out = evaluate(&templates, |fam| {
        let gens = fam.generators().expect("valid template");
        let q = match QuotientModel::new(&gens) {
            Ok(q) => q,
            Err(e) => {
                return vec![
                    VerificationReport::new("order.template", fam.to_string(), "finite quotient")
                        .with_computed(e.to_string()),
                ]
            }
        };
        let (mu, nu, rho) = (fam.mu, fam.nu, fam.rho);
        let xs: Vec<(BiPoly, BigInt)> = (0..mu).map(|j| (BiPoly::x_pow(mu - j), ord3(j.div_ceil(2)))).collect();
        let ys: Vec<(BiPoly, BigInt)> = (0..nu)
            .map(|l| {
                let e = if l % 2 == 1 {
                    l.div_ceil(2)
                } else if rho == 0 {
                    l / 2
                } else {
                    (l + 2) / 2
                };
                (BiPoly::y_pow(nu - l), ord3(e))
            })
            .collect();
        let mut v = vec![
            order_report("order.x_power", fam.to_string(), &q, &xs),
            order_report("order.y_power", fam.to_string(), &q, &ys),
        ];
        if rho == 0 {
            let half = |n: u32| n.div_ceil(2);
            v.push(order_report(
                "order.one",
                fam.to_string(),
                &q,
                &[(BiPoly::one(), ord3(half(mu)))],
            ));
            let small = [
                (BiPoly::x(), ord3(mu / 2)),
                (BiPoly::x_pow(2), ord3((mu - 1) / 2)),
                (BiPoly::y(), ord3(nu / 2)),
                (BiPoly::y_pow(2), ord3((nu - 1) / 2)),
            ];
            v.push(order_report("order.small_powers", fam.to_string(), &q, &small));
        }
        v
    });

    let mut wfams = Vec::new();
    for &p in p_set {
        for mu in mu_range.clone() {
            let m = mu + 2;
            let kmax = (m - 4).min(p.saturating_sub(2) as u32);
            for k in 0..=kmax {
                let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x77 ^ (p << 40) ^ ((mu as u64) << 20) ^ k as u64);
                for a in a_vectors(p, k, cfg.a_sample.min(6), &mut rng) {
                    wfams.push(if a.is_empty() {
                        IdealFamily::y(p, mu)
                    } else {
                        IdealFamily::w(p, mu, a)
                    });
                }
            }
        }
    }
    out.extend(evaluate(&wfams, |fam| {
        let gens = fam.generators().expect("valid family");
        let q = match QuotientModel::new(&gens) {
            Ok(q) => q,
            Err(e) => {
                return vec![
                    VerificationReport::new("order.max_class_x_power", fam.to_string(), "finite quotient")
                        .with_computed(e.to_string()),
                ]
            }
        };
        let d = (fam.p - 1) as u32;
        let p = BigInt::from(fam.p);
        let cases: Vec<(BiPoly, BigInt)> = (0..fam.mu)
            .map(|j| {
                let qq = (fam.mu - 1 - j) / d;
                (BiPoly::x_pow(j), p.pow(qq + 1))
            })
            .collect();
        let mut r = order_report("order.max_class_x_power", fam.to_string(), &q, &cases);
        let want = nearly_homocyclic(fam.p, fam.mu).expect("prime");
        if q.abelian_type() != &want {
            r.verdict = Verdict::Fail;
            r.computed = format!("{}; quotient {} but expected {}", r.computed, q.abelian_type(), want);
        }
        vec![r]
    }));
    out
}

/// Definitional specializations of the template and related coincidences,
/// checked by mutual inclusion.
pub fn run_family_campaign(mu_range: RangeInclusive<u32>) -> Vec<VerificationReport> {
    let mut pairs: Vec<(String, IdealFamily, IdealFamily)> = Vec::new();
    for mu in mu_range {
        for nu in 2..=mu {
            for b in -1..=1 {
                for r in -1..=1 {
                    pairs.push((
                        "family.t".into(),
                        IdealFamily::t(mu, nu, b, r),
                        IdealFamily::s(mu, nu, b, 0, r),
                    ));
                }
            }
            for d in -1..=1 {
                for r in -1..=1 {
                    pairs.push((
                        "family.v".into(),
                        IdealFamily::v(mu, nu, d, r),
                        IdealFamily::s(mu, nu, 0, d, r),
                    ));
                }
            }
            for r in -1..=1 {
                pairs.push((
                    "family.u".into(),
                    IdealFamily::u(mu, nu, r),
                    IdealFamily::s(mu, nu, 0, 0, r),
                ));
            }
            pairs.push((
                "family.r".into(),
                IdealFamily::r(mu, nu),
                IdealFamily::s(mu, nu, 0, 0, 0),
            ));
        }
        for b in -1..=1 {
            for r in -1..=1 {
                pairs.push((
                    "family.z".into(),
                    IdealFamily::z(mu, b, r),
                    IdealFamily::s(mu, 2, b, 0, r),
                ));
            }
        }
        for r in -1..=1 {
            pairs.push((
                "family.zprime".into(),
                IdealFamily::zprime(mu, r),
                IdealFamily::s(mu, 2, 0, 0, r),
            ));
        }
        pairs.push(("family.xfam".into(), IdealFamily::xfam(mu), IdealFamily::r(mu, 2)));
        pairs.push(("family.y".into(), IdealFamily::y(3, mu), IdealFamily::w(3, mu, vec![])));
    }
    pairs.push(("family.l2".into(), IdealFamily::xfam(2), IdealFamily::l2()));
    pairs.push(("family.l".into(), IdealFamily::y(3, 1), IdealFamily::l()));
    evaluate(&pairs, |(claim, a, b)| {
        let ga = a.generators().expect("valid family");
        let gb = b.generators().expect("valid family");
        let cap = default_cap(&ga).max(default_cap(&gb));
        let computed = match ideal_equal(&ga, &gb, cap) {
            Ok(true) => "equal".to_string(),
            Ok(false) => "different".to_string(),
            Err(e) => e.to_string(),
        };
        vec![VerificationReport::compare(
            claim.as_str(),
            format!("{a} vs {b}"),
            "equal",
            computed,
        )]
    })
}

/// Instances covering every branch of the predictions, for the cross-oracle
/// campaign.
pub fn representative_instances() -> Vec<GroupParams> {
    let max = |p, m, w, z, a: Vec<i64>| GroupParams::Max(MaxClassParams::new(p, m, w, z, a));
    let nm = |m, n, a, b, c, d, r| GroupParams::NonMax(NonMaxParams::new(m, n, a, b, c, d, r));
    vec![
        max(2, 5, 1, 0, vec![]),
        max(3, 3, 0, 0, vec![]),
        max(3, 6, 1, -1, vec![]),
        max(3, 7, 0, 1, vec![-1]),
        max(5, 6, 1, 1, vec![3]),
        max(5, 8, 0, 1, vec![2, 4]),
        max(7, 7, 1, 0, vec![]),
        max(7, 8, 0, 0, vec![1, 0, 5]),
        nm(4, 5, 1, 1, 1, 1, 0),
        nm(5, 6, 0, -1, 1, 1, 0),
        nm(6, 7, 1, 0, -1, 1, 0),
        nm(6, 8, 0, 0, 1, 0, 0),
        nm(7, 10, -1, 1, 0, 1, 0),
        nm(6, 7, 0, -1, 1, 0, 1),
        nm(7, 8, 1, 0, 0, -1, -1),
        nm(7, 9, 0, -1, 1, 1, 1),
        nm(8, 11, 1, 1, -1, 0, -1),
        nm(5, 6, 0, 1, 1, 1, 1),
        nm(5, 6, 1, -1, 0, 0, 1),
        nm(5, 6, -1, 0, 1, 0, -1),
    ]
}

/// A random polynomial with total degree at most `deg`.
pub fn random_poly(rng: &mut impl Rng, deg: u32, terms: usize, coeff: i64) -> BiPoly {
    BiPoly::from_terms((0..terms).map(|_| {
        let d = rng.gen_range(0..=deg);
        let x = rng.gen_range(0..=d);
        (Monomial::new(x, d - x), BigInt::from(rng.gen_range(-coeff..=coeff)))
    }))
}

/// Random polynomials, half of them combinations of the given generators so
/// that both answers occur.
pub fn sample_polys(rng: &mut impl Rng, gens: &[BiPoly], deg: u32, count: usize) -> Vec<BiPoly> {
    (0..count)
        .map(|i| {
            if i % 2 == 0 || gens.is_empty() {
                let n = rng.gen_range(1..=6);
                random_poly(rng, deg, n, 9)
            } else {
                let mut f = BiPoly::zero();
                let k = rng.gen_range(1..=gens.len());
                let picked: Vec<&BiPoly> = gens.choose_multiple(rng, k).collect();
                for g in picked {
                    let n = rng.gen_range(1..=3);
                    let h = random_poly(rng, deg / 2, n, 4);
                    f = &f + &(&h * g);
                }
                if rng.gen_bool(0.25) {
                    f = &f + &random_poly(rng, 1, 1, 1);
                }
                f
            }
        })
        .collect()
}

/// Membership in the predicted ideal computed two ways: by the quotient
/// engine and by evaluating on the group.
pub fn run_cross_oracle_campaign(instances: &[GroupParams], cfg: &CampaignConfig) -> Vec<VerificationReport> {
    let indexed: Vec<(usize, &GroupParams)> = instances.iter().enumerate().collect();
    evaluate(&indexed, |(i, params)| {
        let start = Stopwatch::start();
        let claim = "cross_oracle";
        let g = match GroupModel::build(params) {
            Ok(g) => g,
            Err(e) => return vec![inconsistent(claim, params, &e)],
        };
        let pred = match predicted_annihilator(params) {
            Ok(p) => p,
            Err(e) => {
                return vec![VerificationReport::new(claim, params.to_string(), "-")
                    .with_verdict(Verdict::NoPrediction)
                    .with_computed(e.to_string())]
            }
        };
        let gens = pred.generators();
        let q = match QuotientModel::new(&gens) {
            Ok(q) => q,
            Err(e) => return vec![VerificationReport::new(claim, params.to_string(), "-").with_computed(e.to_string())],
        };
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(*i as u64));
        let deg = params.m() + params.e();
        let polys = sample_polys(&mut rng, &gens, deg, cfg.oracle_samples);
        let mut members = 0;
        let mut bad = Vec::new();
        for f in &polys {
            let a = q.contains(f);
            let b = annihilator_contains(&g, f);
            members += usize::from(a);
            if a != b {
                bad.push(f.to_string());
            }
        }
        let expected = format!("agreement on {} polynomials", polys.len());
        let mut r = VerificationReport::new(claim, format!("{params} with {pred}"), expected.clone());
        if bad.is_empty() {
            r.computed = expected;
            r.verdict = Verdict::Pass;
        } else {
            r.computed = format!("{} disagreements, e.g. {}", bad.len(), bad[0]);
        }
        let _ = members;
        vec![r.timed(start)]
    })
}

/// Verdict counts per claim.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub counts: BTreeMap<String, BTreeMap<Verdict, usize>>,
}

impl Summary {
    pub fn from_reports(reports: &[VerificationReport]) -> Self {
        let mut counts: BTreeMap<String, BTreeMap<Verdict, usize>> = BTreeMap::new();
        for r in reports {
            *counts.entry(r.claim.clone()).or_default().entry(r.verdict).or_default() += 1;
        }
        Summary { counts }
    }

    pub fn count(&self, v: Verdict) -> usize {
        self.counts.values().map(|m| m.get(&v).copied().unwrap_or(0)).sum()
    }

    pub fn all_pass(&self) -> bool {
        self.count(Verdict::Fail) == 0
    }

    pub fn to_markdown(&self) -> String {
        let mut s =
            String::from("| claim | PASS | FAIL | NoPrediction | InconsistentPresentation |\n|---|---|---|---|---|\n");
        for (claim, m) in &self.counts {
            let g = |v| m.get(&v).copied().unwrap_or(0);
            s.push_str(&format!(
                "| {claim} | {} | {} | {} | {} |\n",
                g(Verdict::Pass),
                g(Verdict::Fail),
                g(Verdict::NoPrediction),
                g(Verdict::InconsistentPresentation)
            ));
        }
        s
    }
}

/// One JSON object per line.
pub fn write_jsonl<W: Write>(mut w: W, reports: &[VerificationReport]) -> io::Result<()> {
    for r in reports {
        serde_json::to_writer(&mut w, r)?;
        w.write_all(b"\n")?;
    }
    Ok(())
}
