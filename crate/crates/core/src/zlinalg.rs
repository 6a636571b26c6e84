//! Exact integer linear algebra: Hermite and Smith normal forms, lattices in
//! `Z^d`, and invariant factors of finitely generated abelian groups.
//!
//! Matrices act on column vectors. A relation matrix has one column per
//! relation, so the abelian group it presents is `Z^rows / colspan`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::{SerializeSeq, SerializeStruct};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::jsonnum;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// Dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMat {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Build from row vectors. All rows must have length `cols`.
    pub fn from_rows<T: Clone + Into<BigInt>>(cols: usize, rows: &[Vec<T>]) -> Self {
        let mut m = IntMat::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "row {i} has wrong length");
            for (j, x) in r.iter().enumerate() {
                m[(i, j)] = x.clone().into();
            }
        }
        m
    }

    /// Build from column vectors of length `rows`.
    pub fn from_columns(rows: usize, cols: &[Vec<BigInt>]) -> Self {
        let mut m = IntMat::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "column {j} has wrong length");
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> Vec<BigInt> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<BigInt>> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn transpose(&self) -> IntMat {
        let mut t = IntMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut out = IntMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "matrix-vector dimension mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = BigInt::zero();
                for (j, x) in v.iter().enumerate() {
                    let a = &self[(i, j)];
                    if !a.is_zero() && !x.is_zero() {
                        acc += a * x;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn sub(&self, other: &IntMat) -> IntMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IntMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += q * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let s = self.data[src * self.cols + j].clone();
            if !s.is_zero() {
                self.data[dst * self.cols + j] += q * s;
            }
        }
    }

    /// col[dst] += q * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let s = self.data[i * self.cols + src].clone();
            if !s.is_zero() {
                self.data[i * self.cols + dst] += q * s;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let x = &mut self.data[i * self.cols + j];
            *x = -std::mem::take(x);
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMat {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl Serialize for IntMat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.rows))?;
        for i in 0..self.rows {
            let row: Vec<_> = self.row(i).iter().map(jsonnum::to_value).collect();
            seq.serialize_element(&row)?;
        }
        seq.end()
    }
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn det(m: &IntMat) -> BigInt {
    assert_eq!(m.rows, m.cols, "determinant of a non-square matrix");
    let n = m.rows;
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[(k, k)].is_zero() {
            match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                Some(i) => {
                    a.swap_rows(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                a[(i, j)] = v;
            }
        }
        prev = a[(k, k)].clone();
    }
    sign * &a[(n - 1, n - 1)]
}

/// Row-style Hermite normal form of `a` in place, applying the same row
/// operations to `u`. Pivots are positive, entries above a pivot lie in
/// `[0, pivot)`, zero rows sink to the bottom.
fn row_hnf_in_place(a: &mut IntMat, u: &mut IntMat) {
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        loop {
            let best = (r..a.rows)
                .filter(|&i| !a[(i, c)].is_zero())
                .min_by(|&i, &j| a[(i, c)].abs().cmp(&a[(j, c)].abs()));
            let Some(best) = best else { break };
            a.swap_rows(r, best);
            u.swap_rows(r, best);
            let mut done = true;
            for i in r + 1..a.rows {
                if a[(i, c)].is_zero() {
                    continue;
                }
                let q = -(&a[(i, c)] / &a[(r, c)]);
                a.add_row_multiple(i, r, &q);
                u.add_row_multiple(i, r, &q);
                if !a[(i, c)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if r == a.rows || a[(r, c)].is_zero() {
            continue;
        }
        if a[(r, c)].is_negative() {
            a.negate_row(r);
            u.negate_row(r);
        }
        for i in 0..r {
            let q = -a[(i, c)].div_floor(&a[(r, c)]);
            a.add_row_multiple(i, r, &q);
            u.add_row_multiple(i, r, &q);
        }
        r += 1;
    }
}

/// Column-style Hermite normal form: returns `(H, U)` with `H = M·U`, `U`
/// unimodular. The non-zero columns of `H` form the canonical echelon basis of
/// the column span: each pivot (first non-zero entry) is positive, pivots move
/// strictly down, and the entries of other columns in a pivot row lie in
/// `[0, pivot)`.
pub fn hnf(m: &IntMat) -> (IntMat, IntMat) {
    let mut a = m.transpose();
    let mut u = IntMat::identity(a.rows);
    row_hnf_in_place(&mut a, &mut u);
    (a.transpose(), u.transpose())
}

/// Smith normal form: returns `(S, U, V)` with `S = U·M·V` diagonal,
/// non-negative and `S[i][i] | S[i+1][i+1]`.
pub fn snf(m: &IntMat) -> (IntMat, IntMat, IntMat) {
    let mut a = m.clone();
    let mut u = IntMat::identity(a.rows);
    let mut v = IntMat::identity(a.cols);
    let n = a.rows.min(a.cols);
    for t in 0..n {
        // pivot: smallest non-zero entry of the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..a.rows {
            for j in t..a.cols {
                if !a[(i, j)].is_zero() && best.is_none_or(|(bi, bj)| a[(i, j)].abs() < a[(bi, bj)].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap_rows(t, bi);
        u.swap_rows(t, bi);
        a.swap_cols(t, bj);
        v.swap_cols(t, bj);
        loop {
            let mut dirty = false;
            for i in t + 1..a.rows {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = -(&a[(i, t)] / &a[(t, t)]);
                a.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                if !a[(i, t)].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..a.cols {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = -(&a[(t, j)] / &a[(t, t)]);
                a.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                if !a[(t, j)].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // move the smallest remaining entry of row/column t to the pivot
                let mut best = (t, t);
                for i in t + 1..a.rows {
                    if !a[(i, t)].is_zero() && a[(i, t)].abs() < a[best].abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..a.cols {
                    if !a[(t, j)].is_zero() && a[(t, j)].abs() < a[best].abs() {
                        best = (t, j);
                    }
                }
                if best.0 != t {
                    a.swap_rows(t, best.0);
                    u.swap_rows(t, best.0);
                } else if best.1 != t {
                    a.swap_cols(t, best.1);
                    v.swap_cols(t, best.1);
                }
                continue;
            }
            // divisibility: fold an offending row into row t
            let d = a[(t, t)].clone();
            let offending = (t + 1..a.rows).find(|&i| (t + 1..a.cols).any(|j| !a[(i, j)].is_multiple_of(&d)));
            match offending {
                Some(i) => {
                    a.add_row_multiple(t, i, &BigInt::one());
                    u.add_row_multiple(t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
    }
    (a, u, v)
}

/// Invariant factors of a finitely generated abelian group.
///
/// `factors` is in descending divisibility order, e.g. `(9,3,3)`; the trivial
/// group has no factors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct AbelianType {
    pub factors: Vec<BigInt>,
    pub free_rank: usize,
}

impl AbelianType {
    pub fn trivial() -> Self {
        AbelianType::default()
    }

    /// Build from arbitrary cyclic orders by merging them into invariant
    /// factors. Orders of 1 are dropped.
    pub fn from_cyclic_orders<I: IntoIterator<Item = BigInt>>(orders: I) -> Self {
        let orders: Vec<BigInt> = orders.into_iter().filter(|o| !o.is_one()).collect();
        let n = orders.len();
        let mut m = IntMat::zeros(n, n);
        for (i, o) in orders.into_iter().enumerate() {
            m[(i, i)] = o;
        }
        abelian_type(&m, n)
    }

    pub fn from_u64s(factors: &[u64]) -> Self {
        AbelianType::from_cyclic_orders(factors.iter().map(|&f| BigInt::from(f)))
    }

    /// Order, or `None` when the group is infinite.
    pub fn order(&self) -> Option<BigInt> {
        (self.free_rank == 0).then(|| self.factors.iter().product())
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Largest invariant factor (the exponent), `1` for the trivial group.
    pub fn exponent(&self) -> Option<BigInt> {
        if self.free_rank > 0 {
            return None;
        }
        Some(self.factors.first().cloned().unwrap_or_else(BigInt::one))
    }

    pub fn rank(&self) -> usize {
        self.factors.len() + self.free_rank
    }

    /// Direct sum.
    pub fn direct_sum(&self, other: &AbelianType) -> AbelianType {
        let mut t = AbelianType::from_cyclic_orders(self.factors.iter().chain(&other.factors).cloned());
        t.free_rank = self.free_rank + other.free_rank;
        t
    }
}

impl fmt::Display for AbelianType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))?;
        if self.free_rank > 0 {
            write!(f, "+Z^{}", self.free_rank)?;
        }
        Ok(())
    }
}

impl Serialize for AbelianType {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("AbelianType", 2)?;
        let factors: Vec<_> = self.factors.iter().map(jsonnum::to_value).collect();
        st.serialize_field("factors", &factors)?;
        st.serialize_field("free_rank", &self.free_rank)?;
        st.end()
    }
}

/// Type of `Z^ambient_dim / colspan(relations)`.
pub fn abelian_type(relations: &IntMat, ambient_dim: usize) -> AbelianType {
    assert_eq!(relations.rows, ambient_dim, "relations must have ambient_dim rows");
    let (s, _, _) = snf(relations);
    let diag: Vec<BigInt> = (0..ambient_dim.min(s.cols))
        .map(|i| s[(i, i)].clone())
        .filter(|d| !d.is_zero())
        .collect();
    let rank = diag.len();
    let mut factors: Vec<BigInt> = diag.into_iter().filter(|d| !d.is_one()).collect();
    factors.reverse();
    AbelianType {
        factors,
        free_rank: ambient_dim - rank,
    }
}

fn axpy(y: &mut [BigInt], a: &BigInt, x: &[BigInt]) {
    if a.is_zero() {
        return;
    }
    for (yi, xi) in y.iter_mut().zip(x) {
        if !xi.is_zero() {
            *yi += a * xi;
        }
    }
}

/// A sublattice of `Z^d`, kept in echelon form indexed by pivot coordinate.
///
/// `rows[c]`, when present, is the unique basis vector whose first non-zero
/// coordinate is `c`; that coordinate is positive.
#[derive(Clone, Debug)]
pub struct Lattice {
    dim: usize,
    rows: Vec<Option<Vec<BigInt>>>,
}

impl PartialEq for Lattice {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.canonical_rows() == other.canonical_rows()
    }
}

impl Eq for Lattice {}

impl Lattice {
    pub fn zero(dim: usize) -> Self {
        Lattice {
            dim,
            rows: vec![None; dim],
        }
    }

    pub fn full(dim: usize) -> Self {
        let mut l = Lattice::zero(dim);
        for i in 0..dim {
            let mut e = vec![BigInt::zero(); dim];
            e[i] = BigInt::one();
            l.rows[i] = Some(e);
        }
        l
    }

    /// Column span of `m`.
    pub fn from_columns(m: &IntMat) -> Self {
        let mut l = Lattice::zero(m.rows);
        for c in m.columns() {
            l.insert(c);
        }
        l
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.iter().flatten().count()
    }

    pub fn is_full_rank(&self) -> bool {
        self.rows.iter().all(Option::is_some)
    }

    /// Pivot of the echelon row at coordinate `c`, if any.
    pub fn pivot(&self, c: usize) -> Option<&BigInt> {
        self.rows[c].as_ref().map(|r| &r[c])
    }

    /// Index `[Z^d : L]`, or `None` when `L` is not of full rank.
    pub fn index(&self) -> Option<BigInt> {
        self.rows
            .iter()
            .enumerate()
            .map(|(c, r)| r.as_ref().map(|r| r[c].clone()))
            .product()
    }

    fn check_dim(&self, v: &[BigInt]) -> Result<(), LinalgError> {
        if v.len() == self.dim {
            Ok(())
        } else {
            Err(LinalgError::DimensionMismatch {
                expected: self.dim,
                got: v.len(),
            })
        }
    }

    fn reduce_tail(&self, v: &mut [BigInt], from: usize) {
        for c in from..self.dim {
            if v[c].is_zero() {
                continue;
            }
            if let Some(r) = &self.rows[c] {
                let q = -v[c].div_floor(&r[c]);
                axpy(v, &q, r);
            }
        }
    }

    /// Add `v` to the lattice. Returns whether the lattice grew.
    ///
    /// Panics on a dimension mismatch; see [`lattice_add`] for the checked form.
    pub fn insert(&mut self, mut v: Vec<BigInt>) -> bool {
        assert_eq!(v.len(), self.dim, "lattice dimension mismatch");
        let mut changed = false;
        for c in 0..self.dim {
            if v[c].is_zero() {
                continue;
            }
            let Some(r) = self.rows[c].take() else {
                if v[c].is_negative() {
                    v.iter_mut().for_each(|x| *x = -std::mem::take(x));
                }
                self.reduce_tail(&mut v, c + 1);
                self.rows[c] = Some(v);
                return true;
            };
            let p = &r[c];
            if v[c].is_multiple_of(p) {
                let q = -(&v[c] / p);
                axpy(&mut v, &q, &r);
                self.rows[c] = Some(r);
                continue;
            }
            let eg = p.extended_gcd(&v[c]);
            let (mut g, mut a, mut b) = (eg.gcd, eg.x, eg.y);
            if g.is_negative() {
                g = -g;
                a = -a;
                b = -b;
            }
            let mut new_r: Vec<BigInt> = r.iter().map(|x| &a * x).collect();
            axpy(&mut new_r, &b, &v);
            let vp = &v[c] / &g;
            let rp = p / &g;
            let mut next: Vec<BigInt> = v.iter().map(|x| &rp * x).collect();
            axpy(&mut next, &(-vp), &r);
            debug_assert!(next[c].is_zero());
            self.reduce_tail(&mut new_r, c + 1);
            self.rows[c] = Some(new_r);
            changed = true;
            v = next;
        }
        changed
    }

    /// Add every vector; returns whether the lattice grew.
    pub fn extend<I: IntoIterator<Item = Vec<BigInt>>>(&mut self, vs: I) -> bool {
        let mut changed = false;
        for v in vs {
            changed |= self.insert(v);
        }
        changed
    }

    /// Canonical coset representative of `v` modulo the lattice: every pivot
    /// coordinate is reduced into `[0, pivot)`.
    pub fn reduce(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.dim, "lattice dimension mismatch");
        let mut v = v.to_vec();
        self.reduce_tail(&mut v, 0);
        v
    }

    /// Membership by back-substitution.
    pub fn contains(&self, v: &[BigInt]) -> bool {
        assert_eq!(v.len(), self.dim, "lattice dimension mismatch");
        let mut v = v.to_vec();
        for c in 0..self.dim {
            if v[c].is_zero() {
                continue;
            }
            match &self.rows[c] {
                Some(r) if v[c].is_multiple_of(&r[c]) => {
                    let q = -(&v[c] / &r[c]);
                    axpy(&mut v, &q, r);
                }
                _ => return false,
            }
        }
        true
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        other.rows.iter().flatten().all(|r| self.contains(r))
    }

    /// Least `n ≥ 1` with `n·v` in the lattice, or `None` when no multiple is.
    pub fn element_order(&self, v: &[BigInt]) -> Option<BigInt> {
        assert_eq!(v.len(), self.dim, "lattice dimension mismatch");
        let mut n = BigInt::one();
        let mut w = v.to_vec();
        for c in 0..self.dim {
            if w[c].is_zero() {
                continue;
            }
            let r = self.rows[c].as_ref()?;
            let p = &r[c];
            let scale = p / w[c].gcd(p);
            if !scale.is_one() {
                n *= &scale;
                w.iter_mut().for_each(|x| *x *= &scale);
            }
            let q = -(&w[c] / p);
            axpy(&mut w, &q, r);
        }
        Some(n)
    }

    /// Echelon rows in canonical (fully reduced) form, ordered by pivot.
    pub fn canonical_rows(&self) -> Vec<Vec<BigInt>> {
        let mut out = Vec::new();
        for (c, r) in self.rows.iter().enumerate() {
            if let Some(r) = r {
                let mut r = r.clone();
                self.reduce_tail(&mut r, c + 1);
                out.push(r);
            }
        }
        out
    }

    /// Canonical basis as the columns of a matrix (column HNF).
    pub fn basis(&self) -> IntMat {
        IntMat::from_columns(self.dim, &self.canonical_rows())
    }

    /// Type of `Z^d / L`.
    pub fn quotient_type(&self) -> AbelianType {
        // Unit pivots split off; the SNF only needs the remaining block.
        let rows = self.canonical_rows();
        let hard: Vec<usize> = (0..self.dim)
            .filter(|&c| self.pivot(c).is_none_or(|p| !p.is_one()))
            .collect();
        if hard.is_empty() {
            return AbelianType::trivial();
        }
        // Coordinates with unit pivots can be eliminated: project the
        // relations onto the remaining coordinates after clearing unit pivots.
        let mut reduced: Vec<Vec<BigInt>> = Vec::new();
        for r in &rows {
            let c = r.iter().position(|x| !x.is_zero()).expect("non-zero row");
            if r[c].is_one() {
                continue;
            }
            reduced.push(r.clone());
        }
        // Express each non-unit row modulo the unit rows: a unit pivot row
        // e_c + (tail) lets coordinate c be rewritten in terms of later ones.
        let unit_rows: Vec<&Vec<BigInt>> = rows
            .iter()
            .filter(|r| r.iter().find(|x| !x.is_zero()).is_some_and(One::is_one))
            .collect();
        let project = |v: &Vec<BigInt>| -> Vec<BigInt> {
            let mut v = v.clone();
            for ur in &unit_rows {
                let c = ur.iter().position(|x| !x.is_zero()).unwrap();
                if !v[c].is_zero() {
                    let q = -v[c].clone();
                    axpy(&mut v, &q, ur);
                }
            }
            hard.iter().map(|&c| v[c].clone()).collect()
        };
        // Unit rows are processed in pivot order, later rows only touch later
        // coordinates, so one pass clears every unit coordinate.
        let cols: Vec<Vec<BigInt>> = reduced.iter().map(project).collect();
        let m = IntMat::from_columns(hard.len(), &cols);
        abelian_type(&m, hard.len())
    }
}

/// Checked membership test.
pub fn lattice_contains(l: &Lattice, v: &[BigInt]) -> Result<bool, LinalgError> {
    l.check_dim(v)?;
    Ok(l.contains(v))
}

/// Checked sum `L + Z·vs`.
pub fn lattice_add(l: &Lattice, vs: &[Vec<BigInt>]) -> Result<Lattice, LinalgError> {
    let mut out = l.clone();
    for v in vs {
        out.check_dim(v)?;
        out.insert(v.clone());
    }
    Ok(out)
}

/// Convert a vector of small integers.
pub fn ivec(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// Unit vector `e_i` in `Z^dim`.
pub fn unit_vec(dim: usize, i: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); dim];
    v[i] = BigInt::one();
    v
}

/// `|x|` as `u64` when it fits.
pub fn to_u64(x: &BigInt) -> Option<u64> {
    x.to_u64()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMat {
        let cols = rows.first().map_or(0, |r| r.len());
        IntMat::from_rows(cols, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    #[test]
    fn hnf_examples() {
        let a = m(&[&[2, 4], &[0, 2]]);
        let (h, u) = hnf(&a);
        assert_eq!(a.mul(&u), h);
        assert_eq!(det(&u).abs(), BigInt::one());
        assert_eq!(det(&h).abs(), det(&a).abs());
        assert_eq!(h, m(&[&[2, 0], &[0, 2]]));

        let i3 = IntMat::identity(3);
        assert_eq!(hnf(&i3).0, i3);

        let a = m(&[&[6], &[4]]);
        let (h, u) = hnf(&a);
        assert_eq!(a.mul(&u), h);
        assert_eq!(h, m(&[&[6], &[4]]));
        let a = m(&[&[6, 4]]);
        let (h, _) = hnf(&a);
        assert_eq!(h, m(&[&[2, 0]]));
    }

    #[test]
    fn snf_examples() {
        let a = m(&[&[3, 0], &[0, 9]]);
        assert_eq!(snf(&a).0, a);
        let a = m(&[&[2, 1], &[0, 2]]);
        let (s, u, v) = snf(&a);
        assert_eq!(s, m(&[&[1, 0], &[0, 4]]));
        assert_eq!(u.mul(&a).mul(&v), s);
        let z = IntMat::zeros(2, 3);
        assert_eq!(snf(&z).0, z);
    }

    #[test]
    fn abelian_type_examples() {
        let a = m(&[&[3, 0, 0], &[0, 3, 0], &[0, 0, 9]]);
        let t = abelian_type(&a, 3);
        assert_eq!(t, AbelianType::from_u64s(&[9, 3, 3]));
        assert_eq!(t.to_string(), "(9,3,3)");
        let t = abelian_type(&IntMat::zeros(2, 0), 2);
        assert_eq!(t.free_rank, 2);
        assert_eq!(t.order(), None);
        assert_eq!(AbelianType::trivial().order(), Some(BigInt::one()));
        assert_eq!(AbelianType::from_u64s(&[2, 3]).factors, vec![BigInt::from(6)]);
    }

    #[test]
    fn lattice_examples() {
        let l = Lattice::from_columns(&m(&[&[3, 0], &[0, 3]]));
        assert!(l.contains(&ivec(&[3, 3])));
        assert!(!l.contains(&ivec(&[1, 0])));
        let l = Lattice::from_columns(&m(&[&[2], &[1]]));
        assert!(l.contains(&ivec(&[4, 2])));
        assert!(!l.contains(&ivec(&[2, 2])));

        let l = Lattice::from_columns(&m(&[&[2, 0], &[0, 2]]));
        let l2 = lattice_add(&l, &[ivec(&[1, 1])]).unwrap();
        assert_eq!(l2.index(), Some(BigInt::from(2)));
        assert!(l2.contains(&ivec(&[1, 1])));
        assert_eq!(lattice_add(&l2, &[ivec(&[3, 1])]).unwrap(), l2);
        let full = lattice_add(&l, &[ivec(&[1, 0]), ivec(&[0, 1])]).unwrap();
        assert_eq!(full, Lattice::full(2));
        assert!(lattice_contains(&l, &ivec(&[1])).is_err());
    }

    #[test]
    fn element_order_examples() {
        let l = Lattice::from_columns(&m(&[&[9, 0], &[0, 3]]));
        assert_eq!(l.element_order(&ivec(&[1, 0])), Some(BigInt::from(9)));
        assert_eq!(l.element_order(&ivec(&[3, 1])), Some(BigInt::from(3)));
        assert_eq!(l.element_order(&ivec(&[0, 0])), Some(BigInt::one()));
        let l = Lattice::from_columns(&m(&[&[3], &[0]]));
        assert_eq!(l.element_order(&ivec(&[0, 1])), None);
        assert_eq!(l.element_order(&ivec(&[1, 0])), Some(BigInt::from(3)));
    }

    #[test]
    fn quotient_type_with_unit_pivots() {
        // relations e0 - 2 e1, 9 e1, 3 e2: Z^3 / L = Z/9 + Z/3
        let l = Lattice::from_columns(&m(&[&[1, 0, 0], &[-2, 9, 0], &[0, 0, 3]]));
        assert_eq!(l.quotient_type(), AbelianType::from_u64s(&[9, 3]));
        assert_eq!(Lattice::full(4).quotient_type(), AbelianType::trivial());
        assert_eq!(Lattice::zero(2).quotient_type().free_rank, 2);
    }

    #[test]
    fn det_examples() {
        assert_eq!(det(&m(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
        assert_eq!(det(&m(&[&[2, 3, 1], &[4, 1, 0], &[0, 5, 7]])), BigInt::from(-50));
        assert_eq!(det(&m(&[&[1, 2], &[2, 4]])), BigInt::zero());
    }
}
