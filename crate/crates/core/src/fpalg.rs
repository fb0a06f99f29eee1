//! Finite-dimensional algebras over the prime field F_p: Jacobson radical,
//! block decomposition of the semisimple quotient, primitive idempotents and
//! locality tests.
//!
//! The radical uses the iterated trace-form chain (Cohen-Ivanyos-Wales),
//! which is valid in characteristic p where the naive trace radical is not:
//! the i-th form lifts elements to integer matrices, raises to the p^i-th
//! power modulo p^{i+1} and divides the trace by p^i.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

// ---------------------------------------------------------------------------
// F_p linear algebra on Vec<Vec<u64>> (row vectors)

pub fn fp_mod(x: i64, p: u64) -> u64 {
    (((x % p as i64) + p as i64) % p as i64) as u64
}

fn fp_inv(a: u64, p: u64) -> u64 {
    let mut r = 1u64;
    let mut b = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Row-reduce `rows` in place; returns pivot columns.
pub fn fp_rref(rows: &mut Vec<Vec<u64>>, p: u64) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(sel) = (rank..rows.len()).find(|&r| rows[r][col] % p != 0) else {
            continue;
        };
        rows.swap(rank, sel);
        let inv = fp_inv(rows[rank][col], p);
        for x in rows[rank].iter_mut() {
            *x = *x * inv % p;
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][col] % p != 0 {
                let f = rows[r][col] % p;
                for c in 0..ncols {
                    rows[r][c] = (rows[r][c] + (p - f) * rows[rank][c]) % p;
                }
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rows.truncate(rank);
    pivots
}

/// Basis of `{x : x * A = 0}` where rows of `a` are the images of the
/// coordinate vectors (i.e. nullspace of the linear map with matrix rows).
pub fn fp_nullspace(a: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let nrows = a.len();
    if nrows == 0 {
        return Vec::new();
    }
    let ncols = a[0].len();
    // solve c * a = 0 for row vectors c: transpose and find right nullspace
    let mut m: Vec<Vec<u64>> = (0..ncols).map(|j| (0..nrows).map(|i| a[i][j] % p).collect()).collect();
    let pivots = fp_rref(&mut m, p);
    let mut basis = Vec::new();
    for free in 0..nrows {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![0u64; nrows];
        v[free] = 1;
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = (p - m[r][free] % p) % p;
        }
        basis.push(v);
    }
    basis
}

/// Express `target` in the row span of `basis`; returns coordinates.
pub fn fp_coords(basis: &[Vec<u64>], target: &[u64], p: u64) -> Option<Vec<u64>> {
    let k = basis.len();
    let n = target.len();
    let mut m: Vec<Vec<u64>> = basis.iter().map(|b| b.clone()).collect();
    for (i, row) in m.iter_mut().enumerate() {
        // augment with indicator columns to read coordinates back off
        row.extend((0..k).map(|j| u64::from(i == j)));
    }
    let mut aug = m;
    let pivots = fp_rref(&mut aug, p);
    let mut residual: Vec<u64> = target.to_vec();
    let mut coords = vec![0u64; k];
    for (r, &pc) in pivots.iter().enumerate() {
        if pc >= n {
            continue;
        }
        let f = residual[pc] % p;
        if f == 0 {
            continue;
        }
        for c in 0..n {
            residual[c] = (residual[c] + (p - f) * aug[r][c]) % p;
        }
        for j in 0..k {
            coords[j] = (coords[j] + f * aug[r][n + j]) % p;
        }
    }
    if residual.iter().all(|&x| x % p == 0) {
        Some(coords)
    } else {
        None
    }
}

pub fn fp_in_span(basis: &[Vec<u64>], target: &[u64], p: u64) -> bool {
    fp_coords(basis, target, p).is_some()
}

pub fn fp_span_basis(vectors: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let mut m: Vec<Vec<u64>> = vectors.to_vec();
    fp_rref(&mut m, p);
    m
}

// ---------------------------------------------------------------------------

/// A finite-dimensional unital F_p-algebra given by structure constants.
#[derive(Debug, Clone)]
pub struct FpAlgebra {
    pub p: u64,
    pub dim: usize,
    /// `mul[i][j]` = coordinates of `b_i * b_j`.
    pub mul: Vec<Vec<Vec<u64>>>,
    pub one: Vec<u64>,
}

impl FpAlgebra {
    pub fn mul_vec(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        let p = self.p;
        let mut out = vec![0u64; self.dim];
        for i in 0..self.dim {
            if x[i] % p == 0 {
                continue;
            }
            for j in 0..self.dim {
                if y[j] % p == 0 {
                    continue;
                }
                let c = x[i] % p * (y[j] % p) % p;
                for k in 0..self.dim {
                    out[k] = (out[k] + c * self.mul[i][j][k]) % p;
                }
            }
        }
        out
    }

    pub fn add_vec(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        x.iter().zip(y).map(|(&a, &b)| (a + b) % self.p).collect()
    }

    pub fn scale_vec(&self, c: u64, x: &[u64]) -> Vec<u64> {
        x.iter().map(|&a| a * (c % self.p) % self.p).collect()
    }

    pub fn sub_vec(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        x.iter().zip(y).map(|(&a, &b)| (a + self.p - b % self.p) % self.p).collect()
    }

    pub fn is_zero_vec(&self, x: &[u64]) -> bool {
        x.iter().all(|&a| a % self.p == 0)
    }

    pub fn pow_vec(&self, x: &[u64], mut e: u64) -> Vec<u64> {
        let mut base = x.to_vec();
        let mut acc = self.one.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_vec(&acc, &base);
            }
            base = self.mul_vec(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Left-regular representation matrix of `x` (columns are `x * b_j`).
    pub fn left_regular(&self, x: &[u64]) -> Vec<Vec<u64>> {
        let mut cols = Vec::with_capacity(self.dim);
        for j in 0..self.dim {
            let mut ej = vec![0u64; self.dim];
            ej[j] = 1;
            cols.push(self.mul_vec(x, &ej));
        }
        // transpose to row-major
        (0..self.dim).map(|i| (0..self.dim).map(|j| cols[j][i]).collect()).collect()
    }

    /// Trace form layer i: lift the left-regular matrix of `x` to integers,
    /// raise to the p^i-th power modulo p^{i+1}, take the trace and divide
    /// by p^i.
    fn tau(&self, x: &[u64], i: u32) -> u64 {
        let p = self.p;
        let modulus = p.pow(i + 1);
        let m = self.left_regular(x);
        let lifted: Vec<Vec<u64>> = m.iter().map(|r| r.iter().map(|&c| c % modulus).collect()).collect();
        let powed = mat_pow_mod(&lifted, p.pow(i), modulus);
        let tr: u64 = (0..self.dim).map(|k| powed[k][k]).fold(0, |a, b| (a + b) % modulus);
        debug_assert_eq!(tr % p.pow(i), 0, "trace not divisible at layer {i}");
        tr / p.pow(i) % p
    }

    /// Basis of the Jacobson radical (vectors in algebra coordinates).
    pub fn radical_basis(&self) -> Vec<Vec<u64>> {
        if self.dim == 0 {
            return Vec::new();
        }
        let p = self.p;
        // floor(log_p dim) + 1 layers: the i-th form only separates
        // semisimple parts whose matrix blocks repeat p^i times
        let mut layers = 1u32;
        let mut pw = p;
        while pw <= self.dim as u64 {
            pw *= p;
            layers += 1;
        }
        let mut current: Vec<Vec<u64>> = (0..self.dim)
            .map(|i| {
                let mut v = vec![0u64; self.dim];
                v[i] = 1;
                v
            })
            .collect();
        for i in 0..layers {
            if current.is_empty() {
                break;
            }
            // rows: value of tau_i(x_r * b_j) for each basis x_r of the layer
            let table: Vec<Vec<u64>> = current
                .iter()
                .map(|x| {
                    (0..self.dim)
                        .map(|j| {
                            let mut ej = vec![0u64; self.dim];
                            ej[j] = 1;
                            self.tau(&self.mul_vec(x, &ej), i)
                        })
                        .collect()
                })
                .collect();
            let null = fp_nullspace(&table, p);
            current = null
                .iter()
                .map(|c| {
                    let mut v = vec![0u64; self.dim];
                    for (r, &cr) in c.iter().enumerate() {
                        for k in 0..self.dim {
                            v[k] = (v[k] + cr * current[r][k]) % p;
                        }
                    }
                    v
                })
                .collect();
        }
        fp_span_basis(&current, p)
    }

    /// Quotient algebra by a two-sided ideal with the given basis; returns
    /// the quotient, the projection (dim -> qdim, rows of a matrix applied
    /// on coordinate row vectors) and a section (qdim -> dim).
    pub fn quotient(&self, ideal: &[Vec<u64>]) -> (FpAlgebra, Vec<Vec<u64>>, Vec<Vec<u64>>) {
        let p = self.p;
        let mut ibasis = ideal.to_vec();
        let pivots = fp_rref(&mut ibasis, p);
        let free: Vec<usize> = (0..self.dim).filter(|c| !pivots.contains(c)).collect();
        let qdim = free.len();
        // projection: reduce modulo the ideal, keep free coordinates
        let project = |v: &[u64]| -> Vec<u64> {
            let mut w: Vec<u64> = v.to_vec();
            for (r, &pc) in pivots.iter().enumerate() {
                let f = w[pc] % p;
                if f != 0 {
                    for c in 0..self.dim {
                        w[c] = (w[c] + (p - f) * ibasis[r][c]) % p;
                    }
                }
            }
            free.iter().map(|&c| w[c]).collect()
        };
        let section: Vec<Vec<u64>> = free
            .iter()
            .map(|&c| {
                let mut v = vec![0u64; self.dim];
                v[c] = 1;
                v
            })
            .collect();
        let mut mul = vec![vec![vec![0u64; qdim]; qdim]; qdim];
        for i in 0..qdim {
            for j in 0..qdim {
                mul[i][j] = project(&self.mul_vec(&section[i], &section[j]));
            }
        }
        let one = project(&self.one);
        let proj_rows: Vec<Vec<u64>> = (0..self.dim)
            .map(|c| {
                let mut v = vec![0u64; self.dim];
                v[c] = 1;
                project(&v)
            })
            .collect();
        (FpAlgebra { p, dim: qdim, mul, one }, proj_rows, section)
    }

    pub fn project_vec(proj: &[Vec<u64>], v: &[u64], p: u64) -> Vec<u64> {
        let qdim = proj.first().map_or(0, |r| r.len());
        let mut out = vec![0u64; qdim];
        for (i, &vi) in v.iter().enumerate() {
            if vi % p == 0 {
                continue;
            }
            for k in 0..qdim {
                out[k] = (out[k] + vi % p * proj[i][k]) % p;
            }
        }
        out
    }

    /// Basis of the center.
    pub fn center_basis(&self) -> Vec<Vec<u64>> {
        // x central iff x*b_j - b_j*x = 0 for all j: linear system on x
        let table: Vec<Vec<u64>> = (0..self.dim)
            .map(|i| {
                let mut ei = vec![0u64; self.dim];
                ei[i] = 1;
                let mut row = Vec::with_capacity(self.dim * self.dim);
                for j in 0..self.dim {
                    let mut ej = vec![0u64; self.dim];
                    ej[j] = 1;
                    let comm = self.sub_vec(&self.mul_vec(&ei, &ej), &self.mul_vec(&ej, &ei));
                    row.extend(comm);
                }
                row
            })
            .collect();
        let null = fp_nullspace(&table, self.p);
        fp_span_basis(&null, self.p)
    }

    /// Dimension of `{x in span : x^p = x}`; Frobenius is F_p-linear on a
    /// commutative subalgebra.
    fn frobenius_fixed(&self, span: &[Vec<u64>]) -> Vec<Vec<u64>> {
        let p = self.p;
        let table: Vec<Vec<u64>> = span
            .iter()
            .map(|x| {
                let diff = self.sub_vec(&self.pow_vec(x, p), x);
                // express the difference in span coordinates; it stays in the
                // subalgebra, so coordinates exist
                fp_coords(span, &diff, p).expect("Frobenius leaves the subalgebra")
            })
            .collect();
        let null = fp_nullspace(&table, p);
        null.iter()
            .map(|c| {
                let mut v = vec![0u64; self.dim];
                for (r, &cr) in c.iter().enumerate() {
                    for k in 0..self.dim {
                        v[k] = (v[k] + cr * span[r][k]) % p;
                    }
                }
                v
            })
            .collect()
    }

    /// Newton lift of an approximate idempotent (e^2 = e modulo a nilpotent
    /// defect) to an exact idempotent: e <- 3e^2 - 2e^3.
    pub fn idempotent_newton(&self, e: &[u64]) -> Vec<u64> {
        let mut e = e.to_vec();
        for _ in 0..(64 - (self.dim as u64).leading_zeros() + 2) {
            let e2 = self.mul_vec(&e, &e);
            if e2 == e {
                break;
            }
            let e3 = self.mul_vec(&e2, &e);
            e = self.sub_vec(&self.add_vec(&self.scale_vec(2, &e2), &e2), &self.scale_vec(2, &e3));
        }
        assert_eq!(self.mul_vec(&e, &e), e, "idempotent lift did not converge");
        e
    }

    /// Try to build a nontrivial idempotent of the unital subalgebra with
    /// the given unit from the element `b`: pass to F_p[b], kill its
    /// nilradical, split the Frobenius-fixed subalgebra at a rational
    /// eigenvalue and lift back.
    pub fn idempotent_from_element(&self, unit: &[u64], b: &[u64]) -> Option<Vec<u64>> {
        let p = self.p;
        // basis of F_p[b] (unital: starts with the subalgebra unit)
        let mut pows: Vec<Vec<u64>> = vec![unit.to_vec()];
        let mut cur = unit.to_vec();
        loop {
            cur = self.mul_vec(&cur, b);
            if fp_in_span(&fp_span_basis(&pows, p), &cur, p) {
                break;
            }
            pows.push(cur.clone());
        }
        let cbasis = pows;
        // nilradical of the commutative algebra: kernel of x -> x^{p^k}
        let mut pk = 1u64;
        while pk < cbasis.len() as u64 {
            pk *= p;
        }
        let span = fp_span_basis(&cbasis, p);
        let fro_table: Vec<Vec<u64>> = span
            .iter()
            .map(|x| fp_coords(&span, &self.pow_vec(x, pk), p).expect("power stays inside"))
            .collect();
        let nil: Vec<Vec<u64>> = fp_nullspace(&fro_table, p)
            .iter()
            .map(|c| {
                let mut v = vec![0u64; self.dim];
                for (r, &cr) in c.iter().enumerate() {
                    for k in 0..self.dim {
                        v[k] = (v[k] + cr * span[r][k]) % p;
                    }
                }
                v
            })
            .collect();
        // semisimple classes: work with Frobenius-fixed elements modulo nil
        let fixed = {
            // {x in C : x^p - x in nil}
            let nilspan = fp_span_basis(&nil, p);
            let ambient: Vec<Vec<u64>> = span.iter().chain(nilspan.iter()).cloned().collect();
            let ambient = fp_span_basis(&ambient, p);
            let table: Vec<Vec<u64>> = span
                .iter()
                .map(|x| {
                    let d = self.sub_vec(&self.pow_vec(x, p), x);
                    // coordinates in span + nil; condition: span part of
                    // (x^p - x) is inside nil
                    let _ = &ambient;
                    d
                })
                .collect();
            // condition: d in nilspan
            let mut sys: Vec<Vec<u64>> = Vec::new();
            // build matrix whose nullspace is {c : sum c_r d_r in nilspan};
            // equivalently quotient the d_r by nilspan and take the nullspace
            let nilspan = fp_span_basis(&nil, p);
            let mut quot_rows = Vec::new();
            for d in &table {
                let mut w = d.clone();
                // reduce modulo nilspan (it is in rref)
                let mut ns = nilspan.clone();
                let piv = fp_rref(&mut ns, p);
                for (r, &pc) in piv.iter().enumerate() {
                    let f = w[pc] % p;
                    if f != 0 {
                        for c in 0..self.dim {
                            w[c] = (w[c] + (p - f) * ns[r][c]) % p;
                        }
                    }
                }
                quot_rows.push(w);
            }
            sys.extend(quot_rows);
            let null = fp_nullspace(&sys, p);
            null.iter()
                .map(|c| {
                    let mut v = vec![0u64; self.dim];
                    for (r, &cr) in c.iter().enumerate() {
                        for k in 0..self.dim {
                            v[k] = (v[k] + cr * span[r][k]) % p;
                        }
                    }
                    v
                })
                .collect::<Vec<_>>()
        };
        let fixed = fp_span_basis(&fixed, p);
        if fixed.len() < 2 {
            return None;
        }
        // pick a fixed element not proportional to the unit
        let unit_span = fp_span_basis(&[unit.to_vec()], p);
        let v = fixed.iter().find(|x| !fp_in_span(&unit_span, x, p))?.clone();
        // v satisfies prod (v - c) in nil over the rational eigenvalues c;
        // find the eigenvalues by testing nilpotency of shifted powers
        let mut eigen = Vec::new();
        for c in 0..p {
            // v - c*unit nilpotent on its component iff some power of the
            // product of the other shifts is nonzero... test directly:
            // (v - c)^{p^k} == 0 on the c-component; instead check
            // non-invertibility inside C: (v - c) is a zero divisor
            let shifted = self.sub_vec(&v, &self.scale_vec(c, unit));
            let powered = self.pow_vec(&shifted, pk);
            // c is an eigenvalue iff shifted is not invertible in C, i.e.
            // its p^k power does not generate the unit component; test:
            // powered is a zero divisor <=> the ideal powered*C misses unit
            let mut ideal: Vec<Vec<u64>> = Vec::new();
            let mut x = powered.clone();
            ideal.push(x.clone());
            for _ in 0..fixed.len() + nil.len() + 2 {
                x = self.mul_vec(&x, &v);
                ideal.push(x.clone());
            }
            let ideal = fp_span_basis(&ideal, p);
            if !fp_in_span(&ideal, unit, p) {
                eigen.push(c);
            }
        }
        if eigen.len() < 2 {
            return None;
        }
        // Lagrange idempotent on the first eigenvalue, then Newton
        let c0 = eigen[0];
        let mut e = unit.to_vec();
        for &c in &eigen[1..] {
            let denom = fp_inv(fp_mod(c0 as i64 - c as i64, p), p);
            let factor = self.scale_vec(denom, &self.sub_vec(&v, &self.scale_vec(c, unit)));
            e = self.mul_vec(&e, &factor);
        }
        let e = self.idempotent_newton(&e);
        if self.is_zero_vec(&e) || e == *unit {
            return None;
        }
        Some(e)
    }

    /// A nontrivial idempotent of the unital corner with the given unit, or
    /// `None` if the search fails (the caller decides whether that means
    /// "local" or "indeterminate").
    pub fn find_idempotent(
        &self,
        unit: &[u64],
        corner_basis: &[Vec<u64>],
        seed: u64,
        exhaustive_bound: u64,
    ) -> SearchOutcome {
        let p = self.p;
        // deterministic first pass: every corner basis element
        for b in corner_basis {
            if let Some(e) = self.idempotent_from_element(unit, b) {
                return SearchOutcome::Found(e);
            }
        }
        // random combinations
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..128 {
            let b: Vec<u64> = {
                let mut v = vec![0u64; self.dim];
                for basis in corner_basis {
                    let c = rng.gen_range(0..p);
                    for k in 0..self.dim {
                        v[k] = (v[k] + c * basis[k]) % p;
                    }
                }
                v
            };
            if self.is_zero_vec(&b) {
                continue;
            }
            if let Some(e) = self.idempotent_from_element(unit, &b) {
                return SearchOutcome::Found(e);
            }
        }
        // exhaustive fallback over the corner
        let dim = corner_basis.len();
        let total = (p as u128).checked_pow(dim as u32).unwrap_or(u128::MAX);
        if total <= exhaustive_bound as u128 {
            let mut counter = vec![0u64; dim];
            loop {
                let mut v = vec![0u64; self.dim];
                for (c, basis) in counter.iter().zip(corner_basis) {
                    for k in 0..self.dim {
                        v[k] = (v[k] + c * basis[k]) % p;
                    }
                }
                if !self.is_zero_vec(&v)
                    && self.mul_vec(&v, &v) == v
                    && v != *unit
                {
                    return SearchOutcome::Found(v);
                }
                // increment
                let mut i = 0;
                loop {
                    if i == dim {
                        return SearchOutcome::NoneExists;
                    }
                    counter[i] += 1;
                    if counter[i] < p {
                        break;
                    }
                    counter[i] = 0;
                    i += 1;
                }
            }
        }
        SearchOutcome::GaveUp
    }

    /// Central primitive idempotents of a *semisimple* algebra.
    pub fn central_primitive_idempotents(&self, seed: u64) -> Vec<Vec<u64>> {
        let mut blocks = vec![self.one.clone()];
        let mut done = false;
        while !done {
            done = true;
            let mut next = Vec::new();
            for e in &blocks {
                // center of the corner e*A*e
                let center = self.center_basis();
                let corner_center: Vec<Vec<u64>> = center
                    .iter()
                    .map(|z| self.mul_vec(e, &self.mul_vec(z, e)))
                    .collect();
                let corner_center = fp_span_basis(&corner_center, self.p);
                let fixed = self.frobenius_fixed(&corner_center);
                if fp_span_basis(&fixed, self.p).len() <= 1 {
                    next.push(e.clone());
                    continue;
                }
                match self.find_idempotent(e, &corner_center, seed, 1 << 20) {
                    SearchOutcome::Found(f) => {
                        let fc = self.sub_vec(e, &f);
                        next.push(f);
                        next.push(fc);
                        done = false;
                    }
                    _ => next.push(e.clone()),
                }
            }
            blocks = next;
        }
        blocks
    }
}

#[derive(Debug, Clone)]
pub enum SearchOutcome {
    Found(Vec<u64>),
    NoneExists,
    GaveUp,
}

fn mat_mul_mod(a: &[Vec<u64>], b: &[Vec<u64>], m: u64) -> Vec<Vec<u64>> {
    let n = a.len();
    let mut out = vec![vec![0u64; n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] == 0 {
                continue;
            }
            for j in 0..n {
                out[i][j] = (out[i][j] + a[i][k] * b[k][j]) % m;
            }
        }
    }
    out
}

fn mat_pow_mod(a: &[Vec<u64>], mut e: u64, m: u64) -> Vec<Vec<u64>> {
    let n = a.len();
    let mut acc: Vec<Vec<u64>> = (0..n)
        .map(|i| (0..n).map(|j| u64::from(i == j)).collect())
        .collect();
    let mut base = a.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = mat_mul_mod(&acc, &base, m);
        }
        base = mat_mul_mod(&base, &base, m);
        e >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    /// k[x]/(x^2) over F_2: radical is (x).
    fn dual_numbers(p: u64) -> FpAlgebra {
        FpAlgebra {
            p,
            dim: 2,
            mul: vec![
                vec![vec![1, 0], vec![0, 1]],
                vec![vec![0, 1], vec![0, 0]],
            ],
            one: vec![1, 0],
        }
    }

    /// F_4 over F_2 with basis (1, w), w^2 = w + 1.
    fn f4() -> FpAlgebra {
        FpAlgebra {
            p: 2,
            dim: 2,
            mul: vec![
                vec![vec![1, 0], vec![0, 1]],
                vec![vec![0, 1], vec![1, 1]],
            ],
            one: vec![1, 0],
        }
    }

    /// M_2(F_p) with basis E11, E12, E21, E22.
    fn mat2(p: u64) -> FpAlgebra {
        let e = |i: usize| {
            let mut v = vec![0u64; 4];
            v[i] = 1;
            v
        };
        let z = vec![0u64; 4];
        // E_{ab} E_{cd} = delta_{bc} E_{ad}
        let mul = vec![
            vec![e(0), e(1), z.clone(), z.clone()],
            vec![z.clone(), z.clone(), e(0), e(1)],
            vec![e(2), e(3), z.clone(), z.clone()],
            vec![z.clone(), z.clone(), e(2), e(3)],
        ];
        FpAlgebra { p, dim: 4, mul, one: vec![1, 0, 0, 1] }
    }

    /// F_p x F_p.
    fn split2(p: u64) -> FpAlgebra {
        FpAlgebra {
            p,
            dim: 2,
            mul: vec![
                vec![vec![1, 0], vec![0, 0]],
                vec![vec![0, 0], vec![0, 1]],
            ],
            one: vec![1, 1],
        }
    }

    #[test]
    fn radicals() {
        assert_eq!(dual_numbers(2).radical_basis(), vec![vec![0, 1]]);
        assert_eq!(dual_numbers(3).radical_basis(), vec![vec![0, 1]]);
        assert!(f4().radical_basis().is_empty());
        assert!(mat2(2).radical_basis().is_empty());
        assert!(split2(2).radical_basis().is_empty());
    }

    #[test]
    fn radical_handles_p_multiplicities() {
        // F_2 x M_2(F_2) would fool the plain trace form; a simpler case
        // with the same failure mode: the group algebra F_2[C_2] where the
        // regular trace form vanishes identically.
        let a = FpAlgebra {
            p: 2,
            dim: 2,
            mul: vec![
                vec![vec![1, 0], vec![0, 1]],
                vec![vec![0, 1], vec![1, 0]],
            ],
            one: vec![1, 0],
        };
        // radical of F_2[C_2] is spanned by 1 + g
        assert_eq!(a.radical_basis(), vec![vec![1, 1]]);
    }

    #[test]
    fn idempotents_split_products() {
        let a = split2(3);
        match a.find_idempotent(&a.one.clone(), &[vec![1, 0], vec![0, 1]], 1, 1 << 20) {
            SearchOutcome::Found(e) => {
                assert_eq!(a.mul_vec(&e, &e), e);
                assert_ne!(e, a.one);
                assert!(!a.is_zero_vec(&e));
            }
            other => panic!("expected idempotent, got {other:?}"),
        }
        // a field has none
        let f = f4();
        assert!(matches!(
            f.find_idempotent(&f.one.clone(), &[vec![1, 0], vec![0, 1]], 1, 1 << 20),
            SearchOutcome::NoneExists
        ));
    }

    #[test]
    fn idempotents_in_matrix_algebras() {
        let a = mat2(2);
        let basis: Vec<Vec<u64>> = (0..4)
            .map(|i| {
                let mut v = vec![0u64; 4];
                v[i] = 1;
                v
            })
            .collect();
        match a.find_idempotent(&a.one.clone(), &basis, 5, 1 << 20) {
            SearchOutcome::Found(e) => {
                assert_eq!(a.mul_vec(&e, &e), e);
                assert_ne!(e, a.one);
            }
            other => panic!("expected idempotent, got {other:?}"),
        }
    }

    #[test]
    fn central_splitting() {
        let a = split2(2);
        let blocks = a.central_primitive_idempotents(3);
        assert_eq!(blocks.len(), 2);
        let f = f4();
        assert_eq!(f.central_primitive_idempotents(3).len(), 1);
        let m = mat2(3);
        assert_eq!(m.central_primitive_idempotents(3).len(), 1);
    }

    #[test]
    fn quotients() {
        let a = dual_numbers(2);
        let (q, proj, _sec) = a.quotient(&a.radical_basis());
        assert_eq!(q.dim, 1);
        assert_eq!(FpAlgebra::project_vec(&proj, &[0, 1], 2), vec![0]);
        assert_eq!(FpAlgebra::project_vec(&proj, &[1, 1], 2), vec![1]);
    }
}
