//! Exact matrix algebra over the truncated ring `O_N`: products, Smith
//! normal form with unimodular transforms, congruence solving, kernels and
//! invariant factors of finite `O`-modules.
//!
//! Entries with valuation >= N are exact zeros of the truncated ring; no
//! thresholding of any kind exists here.

use crate::dvr::{RingElem, RingSpec};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat {
    pub ring: RingSpec,
    pub rows: usize,
    pub cols: usize,
    data: Vec<RingElem>,
}

impl Mat {
    pub fn zeros(ring: RingSpec, rows: usize, cols: usize) -> Self {
        Mat {
            ring,
            rows,
            cols,
            data: vec![ring.zero(); rows * cols],
        }
    }

    pub fn identity(ring: RingSpec, n: usize) -> Self {
        let mut m = Mat::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, ring.one());
        }
        m
    }

    pub fn from_fn(ring: RingSpec, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> RingElem) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { ring, rows, cols, data }
    }

    pub fn from_int_rows(ring: RingSpec, rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        Mat::from_fn(ring, r, c, |i, j| ring.from_int(rows[i][j]))
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &RingElem {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: RingElem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.ring, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "shape mismatch in mul");
        let ring = self.ring;
        let mut out = Mat::zeros(ring, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if ring.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let t = ring.mul(a, other.get(k, j));
                    let s = ring.add(out.get(i, j), &t);
                    out.set(i, j, s);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Mat) -> Mat {
        Mat::from_fn(self.ring, self.rows, self.cols, |i, j| {
            self.ring.add(self.get(i, j), other.get(i, j))
        })
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        Mat::from_fn(self.ring, self.rows, self.cols, |i, j| {
            self.ring.sub(self.get(i, j), other.get(i, j))
        })
    }

    pub fn neg(&self) -> Mat {
        Mat::from_fn(self.ring, self.rows, self.cols, |i, j| self.ring.neg(self.get(i, j)))
    }

    pub fn scale(&self, c: &RingElem) -> Mat {
        Mat::from_fn(self.ring, self.rows, self.cols, |i, j| self.ring.mul(c, self.get(i, j)))
    }

    pub fn reduce_mod(&self, b: u32) -> Mat {
        Mat::from_fn(self.ring, self.rows, self.cols, |i, j| self.ring.reduce(self.get(i, j), b))
    }

    pub fn eq_mod(&self, other: &Mat, b: u32) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| self.ring.eq_mod(self.get(i, j), other.get(i, j), b))
            })
    }

    pub fn is_zero_mod(&self, b: u32) -> bool {
        self.data.iter().all(|x| self.ring.val(x) >= b)
    }

    pub fn hstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows);
        Mat::from_fn(self.ring, self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        })
    }

    pub fn vstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols);
        Mat::from_fn(self.ring, self.rows + other.rows, self.cols, |i, j| {
            if i < self.rows {
                self.get(i, j).clone()
            } else {
                other.get(i - self.rows, j).clone()
            }
        })
    }

    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Mat {
        Mat::from_fn(self.ring, r1 - r0, c1 - c0, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    pub fn column(&self, j: usize) -> Mat {
        self.submatrix(0, self.rows, j, j + 1)
    }

    pub fn row(&self, i: usize) -> Mat {
        self.submatrix(i, i + 1, 0, self.cols)
    }

    /// Column-major flattening of the matrix into a single column vector.
    pub fn vec_cols(&self) -> Mat {
        Mat::from_fn(self.ring, self.rows * self.cols, 1, |i, _| {
            self.get(i % self.rows, i / self.rows).clone()
        })
    }

    /// Inverse of `vec_cols`.
    pub fn unvec_cols(ring: RingSpec, v: &Mat, rows: usize, cols: usize) -> Mat {
        assert_eq!(v.rows, rows * cols);
        Mat::from_fn(ring, rows, cols, |i, j| v.get(j * rows + i, 0).clone())
    }

    pub fn to_int_rows(&self) -> Vec<Vec<Vec<u64>>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.ring.to_vec(self.get(i, j))).collect())
            .collect()
    }
}

/// `u * a * v = diag(pi^{d_i})`, with `u`, `v` unimodular and `d`
/// nondecreasing; `d_i = N` encodes a zero diagonal entry.
#[derive(Debug, Clone)]
pub struct SmithForm {
    pub u: Mat,
    pub u_inv: Mat,
    pub v: Mat,
    pub v_inv: Mat,
    pub d: Vec<u32>,
}

impl SmithForm {
    pub fn diagonal(&self, rows: usize, cols: usize) -> Mat {
        let ring = self.u.ring;
        let mut m = Mat::zeros(ring, rows, cols);
        for (i, &di) in self.d.iter().enumerate() {
            m.set(i, i, ring.pi_pow(di));
        }
        m
    }
}

pub fn smith(a: &Mat) -> SmithForm {
    let ring = a.ring;
    let n = ring.n();
    let (rows, cols) = (a.rows, a.cols);
    let mind = rows.min(cols);
    let mut a = a.clone();
    let mut u = Mat::identity(ring, rows);
    let mut u_inv = Mat::identity(ring, rows);
    let mut v = Mat::identity(ring, cols);
    let mut v_inv = Mat::identity(ring, cols);
    let mut d = Vec::with_capacity(mind);

    for k in 0..mind {
        // minimal-valuation pivot, row-major tie break
        let mut best: Option<(u32, usize, usize)> = None;
        for i in k..rows {
            for j in k..cols {
                let val = ring.val(a.get(i, j));
                if val < n && best.map_or(true, |(bv, _, _)| val < bv) {
                    best = Some((val, i, j));
                }
            }
        }
        let Some((vp, pi_, pj)) = best else {
            for _ in k..mind {
                d.push(n);
            }
            break;
        };
        // move pivot to (k, k)
        if pi_ != k {
            swap_rows(&mut a, k, pi_);
            swap_rows(&mut u, k, pi_);
            swap_cols(&mut u_inv, k, pi_);
        }
        if pj != k {
            swap_cols(&mut a, k, pj);
            swap_cols(&mut v, k, pj);
            swap_rows(&mut v_inv, k, pj);
        }
        // normalize pivot to exactly pi^vp
        let w = ring.div_pi(a.get(k, k), vp).expect("pivot valuation");
        let c = ring.inv(&w).expect("unit part");
        scale_row(&mut a, k, &c);
        scale_row(&mut u, k, &c);
        scale_col(&mut u_inv, k, &w);
        a.set(k, k, ring.pi_pow(vp));
        // clear the column below the pivot
        for i in k + 1..rows {
            if ring.val(a.get(i, k)) >= n {
                continue;
            }
            let q = ring.div_pi(a.get(i, k), vp).expect("minimality of pivot");
            row_sub(&mut a, i, k, &q);
            row_sub(&mut u, i, k, &q);
            // u_inv <- u_inv * (I + q e_{ik})
            col_add(&mut u_inv, k, i, &q);
            a.set(i, k, ring.zero());
        }
        // clear the row to the right of the pivot
        for j in k + 1..cols {
            if ring.val(a.get(k, j)) >= n {
                continue;
            }
            let q = ring.div_pi(a.get(k, j), vp).expect("minimality of pivot");
            col_sub(&mut a, j, k, &q);
            col_sub(&mut v, j, k, &q);
            // v_inv <- (I + q e_{kj}) * v_inv
            row_add(&mut v_inv, k, j, &q);
            a.set(k, j, ring.zero());
        }
        d.push(vp);
    }
    SmithForm { u, u_inv, v, v_inv, d }
}

fn swap_rows(m: &mut Mat, i: usize, j: usize) {
    for c in 0..m.cols {
        let a = m.get(i, c).clone();
        let b = m.get(j, c).clone();
        m.set(i, c, b);
        m.set(j, c, a);
    }
}

fn swap_cols(m: &mut Mat, i: usize, j: usize) {
    for r in 0..m.rows {
        let a = m.get(r, i).clone();
        let b = m.get(r, j).clone();
        m.set(r, i, b);
        m.set(r, j, a);
    }
}

fn scale_row(m: &mut Mat, i: usize, c: &RingElem) {
    let ring = m.ring;
    for j in 0..m.cols {
        let t = ring.mul(m.get(i, j), c);
        m.set(i, j, t);
    }
}

fn scale_col(m: &mut Mat, j: usize, c: &RingElem) {
    let ring = m.ring;
    for i in 0..m.rows {
        let t = ring.mul(m.get(i, j), c);
        m.set(i, j, t);
    }
}

/// row_i -= q * row_k
fn row_sub(m: &mut Mat, i: usize, k: usize, q: &RingElem) {
    let ring = m.ring;
    for j in 0..m.cols {
        let t = ring.sub(m.get(i, j), &ring.mul(q, m.get(k, j)));
        m.set(i, j, t);
    }
}

/// row_i += q * row_k
fn row_add(m: &mut Mat, i: usize, k: usize, q: &RingElem) {
    let ring = m.ring;
    for j in 0..m.cols {
        let t = ring.add(m.get(i, j), &ring.mul(q, m.get(k, j)));
        m.set(i, j, t);
    }
}

/// col_j -= q * col_k
fn col_sub(m: &mut Mat, j: usize, k: usize, q: &RingElem) {
    let ring = m.ring;
    for i in 0..m.rows {
        let t = ring.sub(m.get(i, j), &ring.mul(q, m.get(i, k)));
        m.set(i, j, t);
    }
}

/// col_j += q * col_k
fn col_add(m: &mut Mat, j: usize, k: usize, q: &RingElem) {
    let ring = m.ring;
    for i in 0..m.rows {
        let t = ring.add(m.get(i, j), &ring.mul(q, m.get(i, k)));
        m.set(i, j, t);
    }
}

/// Solve `A x = b (mod pi^w)` columnwise; `None` when unsolvable at the
/// working precision.
pub fn solve_right(a: &Mat, b: &Mat, w: u32) -> Option<Mat> {
    assert_eq!(a.rows, b.rows, "shape mismatch in solve");
    let sf = smith(a);
    solve_right_with(a.ring, &sf, a.rows, a.cols, b, w)
}

pub fn solve_right_with(
    ring: RingSpec,
    sf: &SmithForm,
    rows: usize,
    cols: usize,
    b: &Mat,
    w: u32,
) -> Option<Mat> {
    let ub = sf.u.mul(b);
    let mind = sf.d.len();
    let mut y = Mat::zeros(ring, cols, b.cols);
    for c in 0..b.cols {
        for i in 0..rows {
            let rhs = ub.get(i, c);
            if i >= mind || i >= cols {
                if ring.val(rhs) < w {
                    return None;
                }
                continue;
            }
            let di = sf.d[i];
            if di >= w {
                if ring.val(rhs) < w {
                    return None;
                }
                continue;
            }
            if ring.val(rhs) < di {
                return None;
            }
            y.set(i, c, ring.div_pi(rhs, di).expect("checked valuation"));
        }
    }
    Some(sf.v.mul(&y).reduce_mod(w))
}

/// Solve `x A = b (mod pi^w)` rowwise.
pub fn solve_left(a: &Mat, b: &Mat, w: u32) -> Option<Mat> {
    solve_right(&a.transpose(), &b.transpose(), w).map(|x| x.transpose())
}

/// Columns generate `{x in O_N^cols : A x = 0 (mod pi^w)}` as an
/// `O_N`-module.
pub fn kernel_right(a: &Mat, w: u32) -> Mat {
    let ring = a.ring;
    let n = ring.n();
    let sf = smith(a);
    let mind = sf.d.len();
    let mut gens: Vec<Mat> = Vec::new();
    for i in 0..a.cols {
        let c = if i < mind { (w.saturating_sub(sf.d[i])).min(n) } else { 0 };
        if c >= n {
            continue;
        }
        let col = sf.v.column(i).scale(&ring.pi_pow(c));
        gens.push(col);
    }
    match gens.len() {
        0 => Mat::zeros(ring, a.cols, 0),
        _ => {
            let mut out = gens[0].clone();
            for g in &gens[1..] {
                out = out.hstack(g);
            }
            out
        }
    }
}

/// Columns of the Smith cobasis whose elementary divisor vanishes at the
/// working precision, together with the largest finite divisor seen.  When
/// the exact kernel is a pure sublattice with all true torsion exponents
/// below `w`, these columns agree with a basis of the liftable kernel
/// modulo `pi^{w - t}`, where `t` is the returned torsion bound.
pub fn kernel_right_unscaled(a: &Mat, w: u32) -> (Mat, u32) {
    let ring = a.ring;
    let sf = smith(a);
    let mind = sf.d.len();
    let mut out: Option<Mat> = None;
    let mut torsion = 0u32;
    for i in 0..a.cols {
        let d = if i < mind { sf.d[i] } else { ring.n() };
        if d < w {
            torsion = torsion.max(d);
            continue;
        }
        let col = sf.v.column(i);
        out = Some(match out {
            None => col,
            Some(acc) => acc.hstack(&col),
        });
    }
    (out.unwrap_or_else(|| Mat::zeros(ring, a.cols, 0)), torsion)
}

/// Rows generate `{x : x A = 0 (mod pi^w)}`.
pub fn kernel_left(a: &Mat, w: u32) -> Mat {
    kernel_right(&a.transpose(), w).transpose()
}

/// Minimal generating set of the row span of `x` at working precision `w`,
/// together with the invariant factors of the generated module.
///
/// The row span equals the span of `pi^{d_i} * (row i of v_inv)` from the
/// Smith form, and those rows with `d_i < w` form a minimal generating set:
/// the generated module is the direct sum of cyclic pieces `O/pi^{w-d_i}`.
pub fn row_canonicalize(x: &Mat, w: u32) -> (Mat, Vec<u32>) {
    let ring = x.ring;
    let sf = smith(x);
    let mut rows: Vec<Mat> = Vec::new();
    let mut exps = Vec::new();
    for (i, &di) in sf.d.iter().enumerate() {
        if di >= w {
            continue;
        }
        rows.push(sf.v_inv.row(i).scale(&ring.pi_pow(di)).reduce_mod(w));
        exps.push(w - di);
    }
    let out = match rows.len() {
        0 => Mat::zeros(ring, 0, x.cols),
        _ => {
            let mut out = rows[0].clone();
            for r in &rows[1..] {
                out = out.vstack(r);
            }
            out
        }
    };
    (out, exps)
}

/// Minimal generating columns of the column span of `x` at precision `w`.
pub fn col_canonicalize(x: &Mat, w: u32) -> (Mat, Vec<u32>) {
    let (rows, exps) = row_canonicalize(&x.transpose(), w);
    (rows.transpose(), exps)
}

/// Invariant factor exponents of the finite module `<gens>/<rels>` (row
/// spans, at full precision `N`).  The multiset `{d_i}` presents the module
/// as a direct sum of `O/pi^{d_i}`; zero exponents are dropped.
pub fn invariant_factors(gens: &Mat, rels: &Mat) -> Result<Vec<u32>> {
    let ring = gens.ring;
    let n = ring.n();
    if gens.cols != rels.cols {
        return Err(Error::Shape("gens and rels must share the ambient".into()));
    }
    if rels.rows > 0 && solve_left(gens, rels, n).is_none() {
        return Err(Error::RelsOutsideSpan);
    }
    let g = gens.rows;
    let stacked = gens.vstack(rels);
    let k = kernel_left(&stacked, n);
    let c = k.submatrix(0, k.rows, 0, g);
    let sf = smith(&c);
    let mut factors: Vec<u32> = sf.d.iter().copied().take(g).collect();
    while factors.len() < g {
        factors.push(n);
    }
    factors.retain(|&d| d > 0);
    factors.sort_unstable();
    Ok(factors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng as _, SeedableRng as _};
    use rand_chacha::ChaCha8Rng;

    fn z2_6() -> RingSpec {
        RingSpec::new(2, 1, 6).unwrap()
    }

    #[test]
    fn smith_paper_example() {
        let ring = z2_6();
        let a = Mat::from_int_rows(ring, &[vec![1, 3], vec![3, 1]]);
        let sf = smith(&a);
        assert_eq!(sf.d, vec![0, 3]);
        let lhs = sf.u.mul(&a).mul(&sf.v);
        assert_eq!(lhs, sf.diagonal(2, 2));
    }

    #[test]
    fn smith_identity_and_zero() {
        let ring = z2_6();
        let sf = smith(&Mat::identity(ring, 3));
        assert_eq!(sf.d, vec![0, 0, 0]);
        let sf = smith(&Mat::zeros(ring, 2, 2));
        assert_eq!(sf.d, vec![6, 6]);
    }

    #[test]
    fn kernel_examples() {
        let ring = z2_6();
        // kernel of the zero map is everything
        let k = kernel_left(&Mat::zeros(ring, 2, 2), 6);
        assert_eq!(k.rows, 2);
        // diag(pi^2) at N = 6: single generator of valuation 4
        let a = Mat::from_int_rows(ring, &[vec![4]]);
        let k = kernel_left(&a, 6);
        assert_eq!(k.rows, 1);
        assert_eq!(ring.val(k.get(0, 0)), 4);
        // paper matrix: kernel generated by one pi^3-scaled vector
        let a = Mat::from_int_rows(ring, &[vec![1, 3], vec![3, 1]]);
        let k = kernel_left(&a, 6);
        let (gens, exps) = row_canonicalize(&k, 6);
        assert_eq!(gens.rows, 1);
        assert_eq!(exps, vec![3]);
        assert!(gens.mul(&a).is_zero_mod(6));
    }

    #[test]
    fn solve_examples() {
        let ring = z2_6();
        let b = Mat::from_int_rows(ring, &[vec![7], vec![11]]);
        let x = solve_right(&Mat::identity(ring, 2), &b, 6).unwrap();
        assert!(x.eq_mod(&b, 6));
        // diag(pi) x = 1 has no solution
        let a = Mat::from_int_rows(ring, &[vec![2]]);
        let b = Mat::from_int_rows(ring, &[vec![1]]);
        assert!(solve_right(&a, &b, 6).is_none());
    }

    #[test]
    fn invariant_factor_examples() {
        let ring = z2_6();
        let gens = Mat::identity(ring, 2);
        let rels = Mat::from_int_rows(ring, &[vec![2, 0], vec![0, 8]]);
        assert_eq!(invariant_factors(&gens, &rels).unwrap(), vec![1, 3]);
        let rels = Mat::identity(ring, 2);
        assert!(invariant_factors(&gens, &rels).unwrap().is_empty());
        // rels outside the span are rejected
        let gens = Mat::from_int_rows(ring, &[vec![2, 0]]);
        let rels = Mat::from_int_rows(ring, &[vec![1, 0]]);
        assert!(matches!(invariant_factors(&gens, &rels), Err(Error::RelsOutsideSpan)));
    }

    fn rings() -> Vec<RingSpec> {
        vec![
            RingSpec::new(2, 1, 6).unwrap(),
            RingSpec::new(3, 2, 3).unwrap(),
            RingSpec::new(5, 1, 3).unwrap(),
        ]
    }

    fn random_mat(ring: RingSpec, rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> Mat {
        Mat::from_fn(ring, rows, cols, |_, _| {
            let c: Vec<i64> = (0..ring.e).map(|_| rng.gen_range(0..ring.pm() as i64)).collect();
            ring.from_coeffs(&c).unwrap()
        })
    }

    fn random_unimodular(ring: RingSpec, n: usize, rng: &mut ChaCha8Rng) -> Mat {
        let mut m = Mat::identity(ring, n);
        for _ in 0..3 * n {
            let i = rng.gen_range(0..n);
            let j = rng.gen_range(0..n);
            if i == j {
                continue;
            }
            let q = ring.from_int(rng.gen_range(0..ring.pm() as i64));
            super::row_add(&mut m, i, j, &q);
        }
        m
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn smith_reconstructs(seed in 0u64..1000, ringix in 0usize..3, rows in 1usize..5, cols in 1usize..5) {
            let ring = rings()[ringix];
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = random_mat(ring, rows, cols, &mut rng);
            let sf = smith(&a);
            prop_assert_eq!(sf.u.mul(&a).mul(&sf.v), sf.diagonal(rows, cols));
            prop_assert_eq!(sf.u.mul(&sf.u_inv), Mat::identity(ring, rows));
            prop_assert_eq!(sf.v.mul(&sf.v_inv), Mat::identity(ring, cols));
            let mut sorted = sf.d.clone();
            sorted.sort_unstable();
            prop_assert_eq!(&sorted, &sf.d);
        }

        #[test]
        fn smith_d_is_iso_invariant(seed in 0u64..1000, ringix in 0usize..3, n in 1usize..4) {
            let ring = rings()[ringix];
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = random_mat(ring, n, n, &mut rng);
            let p = random_unimodular(ring, n, &mut rng);
            let q = random_unimodular(ring, n, &mut rng);
            prop_assert_eq!(smith(&a).d, smith(&p.mul(&a).mul(&q)).d);
        }

        #[test]
        fn construct_then_solve(seed in 0u64..1000, ringix in 0usize..3, rows in 1usize..4, cols in 1usize..4) {
            let ring = rings()[ringix];
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = random_mat(ring, rows, cols, &mut rng);
            let x = random_mat(ring, cols, 1, &mut rng);
            let b = a.mul(&x);
            let x2 = solve_right(&a, &b, ring.n()).expect("consistent system");
            prop_assert!(a.mul(&x2).eq_mod(&b, ring.n()));
        }

        #[test]
        fn kernel_rows_annihilate(seed in 0u64..1000, ringix in 0usize..3, rows in 1usize..4, cols in 1usize..4) {
            let ring = rings()[ringix];
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = random_mat(ring, rows, cols, &mut rng);
            let k = kernel_left(&a, ring.n());
            prop_assert!(k.mul(&a).is_zero_mod(ring.n()));
        }
    }

    #[test]
    fn kernel_is_complete_small_brute_force() {
        // p = 2, N = 3, 2 rows: enumerate all of O^2 and check span membership
        let ring = RingSpec::new(2, 1, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let a = random_mat(ring, 2, 2, &mut rng);
            let k = kernel_left(&a, 3);
            for x0 in 0..8i64 {
                for x1 in 0..8i64 {
                    let x = Mat::from_int_rows(ring, &[vec![x0, x1]]);
                    if x.mul(&a).is_zero_mod(3) {
                        assert!(
                            solve_left(&k, &x, 3).is_some(),
                            "kernel element not in generated span"
                        );
                    }
                }
            }
        }
    }
}
