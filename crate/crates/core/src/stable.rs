//! The stable category layer: trace maps, projective (weakly injective)
//! homomorphisms, stable hom modules with invariant factors, exponents,
//! endomorphism algebras with radicals, indecomposability, decomposition,
//! and almost split sequences.

use crate::error::{Error, Result};
use crate::fpalg::{self, FpAlgebra, SearchOutcome};
use crate::linalg::{self, Mat};
use crate::repmod::{
    self, direct_sum, dual, maranda_threshold, module_zero, projective_cover, GMap, GModule,
    HomData,
};

/// Tr_G(f) = sum over g of rho_N(g) f rho_M(g)^{-1}.
pub fn trace_map(f: &Mat, m: &GModule, n: &GModule) -> GMap {
    let all_m = m.rho_all();
    let all_n = n.rho_all();
    let mut out = Mat::zeros(m.ring, n.rank, m.rank);
    for g in 0..m.group.n {
        out = out.add(&all_n[g].mul(f).mul(&all_m[m.group.inv[g]]));
    }
    GMap {
        src: m.clone(),
        dst: n.clone(),
        f: out.reduce_mod(n.b),
    }
}

/// Minimal generators of the trace-map image (the homs factoring through a
/// weakly injective module).
pub fn projective_homs(m: &GModule, n: &GModule) -> Result<HomData> {
    let ring = m.ring;
    let w = m.trust.min(n.trust);
    let dim = n.rank * m.rank;
    let mut cols: Option<Mat> = None;
    for s in 0..n.rank {
        for t in 0..m.rank {
            let mut e = Mat::zeros(ring, n.rank, m.rank);
            e.set(s, t, ring.one());
            let tr = trace_map(&e, m, n);
            let v = tr.f.vec_cols();
            cols = Some(match cols {
                None => v,
                Some(acc) => acc.hstack(&v),
            });
        }
    }
    let cols = cols.unwrap_or_else(|| Mat::zeros(ring, dim, 0));
    let (gens, exps) = linalg::col_canonicalize(&cols, w);
    let basis = (0..gens.cols)
        .map(|j| GMap {
            src: m.clone(),
            dst: n.clone(),
            f: Mat::unvec_cols(ring, &gens.column(j), n.rank, m.rank),
        })
        .collect();
    Ok(HomData {
        basis,
        factor_exponents: exps,
        vec_rows: gens.transpose(),
        trust: w,
    })
}

#[derive(Debug, Clone)]
pub struct StableHomData {
    /// Generators of Hom/(proj homs + pi^w Hom), with their orders.
    pub gens: Vec<GMap>,
    pub factor_exponents: Vec<u32>,
    pub hom: HomData,
    pub proj: HomData,
    pub w: u32,
}

impl StableHomData {
    pub fn exponent(&self) -> u32 {
        self.factor_exponents.iter().copied().max().unwrap_or(0)
    }

    pub fn dim_over_k(&self) -> usize {
        // dimension of the quotient as a k-space when every factor has
        // exponent 1; otherwise counts top quotients
        self.factor_exponents.len()
    }

    /// Stable equality with zero: f lies in proj homs modulo pi^w.
    pub fn is_stably_zero(&self, f: &Mat) -> bool {
        let row = f.vec_cols().transpose();
        linalg::solve_left(&self.proj.vec_rows, &row, self.w).is_some()
    }

    pub fn is_stably_equal(&self, f: &Mat, g: &Mat) -> bool {
        self.is_stably_zero(&f.sub(g))
    }
}

pub fn stable_hom(m: &GModule, n: &GModule) -> Result<StableHomData> {
    let ring = m.ring;
    let hom = repmod::hom_space(m, n)?;
    let proj = projective_homs(m, n)?;
    let w = hom.trust.min(proj.trust);
    let k = hom.basis.len();
    if k == 0 {
        return Ok(StableHomData {
            gens: Vec::new(),
            factor_exponents: Vec::new(),
            hom,
            proj,
            w,
        });
    }
    // coordinates of each projective generator in the hom basis
    let mut rels = Mat::from_fn(ring, k, k, |i, j| {
        if i == j {
            ring.pi_pow(hom.factor_exponents[i])
        } else {
            ring.zero()
        }
    });
    for p in &proj.basis {
        let row = p.f.vec_cols().transpose();
        let coords = linalg::solve_left(&hom.vec_rows, &row, w).ok_or_else(|| {
            Error::Indeterminate("projective hom escaped the hom span".into())
        })?;
        rels = rels.vstack(&coords);
    }
    let sf = linalg::smith(&rels);
    let mut gens = Vec::new();
    let mut exps = Vec::new();
    for i in 0..k {
        let d = if i < sf.d.len() { sf.d[i] } else { ring.n() };
        let d = d.min(w);
        if d == 0 {
            continue;
        }
        // generator = sum over j of v_inv[i][j] * hom_j
        let mut f = Mat::zeros(ring, n.rank, m.rank);
        for j in 0..k {
            let c = sf.v_inv.get(i, j);
            if !ring.is_zero(c) {
                f = f.add(&hom.basis[j].f.scale(c));
            }
        }
        gens.push(GMap {
            src: m.clone(),
            dst: n.clone(),
            f: f.reduce_mod(n.b),
        });
        exps.push(d);
    }
    Ok(StableHomData {
        gens,
        factor_exponents: exps,
        hom,
        proj,
        w,
    })
}

/// Least a with pi^a Id factoring through a weakly injective module.
pub fn exponent(m: &GModule) -> Result<u32> {
    if m.rank == 0 {
        return Ok(0);
    }
    let ring = m.ring;
    let proj = projective_homs(m, m)?;
    let w = m.trust;
    for a in 0..w {
        let f = Mat::identity(ring, m.rank).scale(&ring.pi_pow(a));
        let row = f.vec_cols().transpose();
        if linalg::solve_left(&proj.vec_rows, &row, w).is_some() {
            return Ok(a);
        }
    }
    Err(Error::Precision {
        context: "exponent".into(),
        needed: w + 1,
        available: w,
    })
}

/// Higman's criterion: M is weakly injective iff the identity lies in the
/// image of the trace map.
pub fn is_weakly_injective(m: &GModule) -> Result<bool> {
    if m.rank == 0 {
        return Ok(true);
    }
    let proj = projective_homs(m, m)?;
    let f = Mat::identity(m.ring, m.rank);
    let row = f.vec_cols().transpose();
    Ok(linalg::solve_left(&proj.vec_rows, &row, m.trust).is_some())
}

#[derive(Debug, Clone)]
pub struct EndAlgebra {
    pub module: GModule,
    pub basis: Vec<GMap>,
    pub factor_exponents: Vec<u32>,
    /// E tensor k as structure constants on the basis reductions.
    pub fp: FpAlgebra,
    /// Basis of J(E tensor k) in fp coordinates.
    pub radical: Vec<Vec<u64>>,
    pub is_local: bool,
}

pub fn end_algebra(m: &GModule) -> Result<EndAlgebra> {
    let ring = m.ring;
    let hom = repmod::hom_space(m, m)?;
    let w = hom.trust;
    let k = hom.basis.len();
    if k == 0 {
        return Err(Error::BadModule("zero module has no endomorphism unit".into()));
    }
    // all k^2 products plus the identity in one batched solve so the hom
    // basis matrix is factored once
    let mut rhs = Mat::zeros(ring, k * k + 1, hom.vec_rows.cols);
    for i in 0..k {
        for j in 0..k {
            let prod = hom.basis[i].f.mul(&hom.basis[j].f).reduce_mod(m.b);
            let row = prod.vec_cols();
            for c in 0..rhs.cols {
                rhs.set(i * k + j, c, row.get(c, 0).clone());
            }
        }
    }
    let id_row = Mat::identity(ring, m.rank).vec_cols();
    for c in 0..rhs.cols {
        rhs.set(k * k, c, id_row.get(c, 0).clone());
    }
    let c = linalg::solve_left(&hom.vec_rows, &rhs, w)
        .ok_or_else(|| Error::Indeterminate("endomorphism escaped the hom span".into()))?;
    let coords_row =
        |r: usize| -> Vec<u64> { (0..k).map(|j| ring.to_vec(c.get(r, j))[0] % ring.p).collect() };
    let mut mul = vec![vec![vec![0u64; k]; k]; k];
    for i in 0..k {
        for j in 0..k {
            mul[i][j] = coords_row(i * k + j);
        }
    }
    let one = coords_row(k * k);
    let fp = FpAlgebra { p: ring.p, dim: k, mul, one };
    let radical = fp.radical_basis();
    let is_local = fp_is_local(&fp, &radical);
    Ok(EndAlgebra {
        module: m.clone(),
        basis: hom.basis,
        factor_exponents: hom.factor_exponents,
        fp,
        radical,
        is_local,
    })
}

/// A finite-dimensional F_p-algebra is local iff its semisimple quotient is
/// a field: commutative with a one-dimensional Frobenius-fixed subspace.
fn fp_is_local(fp: &FpAlgebra, radical: &[Vec<u64>]) -> bool {
    let (s, _, _) = fp.quotient(radical);
    if s.dim == 0 {
        return false;
    }
    if s.center_basis().len() != s.dim {
        return false;
    }
    let span: Vec<Vec<u64>> = (0..s.dim)
        .map(|i| {
            let mut v = vec![0u64; s.dim];
            v[i] = 1;
            v
        })
        .collect();
    let table: Vec<Vec<u64>> = span
        .iter()
        .map(|x| {
            let d = s.sub_vec(&s.pow_vec(x, s.p), x);
            d
        })
        .collect();
    fpalg::fp_nullspace(&table, s.p).len() == 1
}

pub fn is_indecomposable(m: &GModule) -> Result<bool> {
    if m.rank == 0 {
        return Ok(false);
    }
    if m.is_lattice() && m.trust < maranda_threshold(m.ring, &m.group) {
        return Err(Error::Precision {
            context: "is_indecomposable".into(),
            needed: maranda_threshold(m.ring, &m.group),
            available: m.trust,
        });
    }
    Ok(end_algebra(m)?.is_local)
}

#[derive(Debug, Clone)]
pub struct Summand {
    pub module: GModule,
    pub embed: GMap,
    pub proj: GMap,
}

/// Full decomposition into indecomposables, with embedding/projection
/// witnesses composed through the recursion.
pub fn decompose(m: &GModule, seed: u64) -> Result<Vec<Summand>> {
    if m.rank == 0 {
        return Ok(Vec::new());
    }
    let e = end_algebra(m)?;
    if e.is_local {
        let id = Mat::identity(m.ring, m.rank);
        return Ok(vec![Summand {
            module: m.clone(),
            embed: GMap { src: m.clone(), dst: m.clone(), f: id.clone() },
            proj: GMap { src: m.clone(), dst: m.clone(), f: id },
        }]);
    }
    let basis_ids: Vec<Vec<u64>> = (0..e.fp.dim)
        .map(|i| {
            let mut v = vec![0u64; e.fp.dim];
            v[i] = 1;
            v
        })
        .collect();
    let ebar = match e.fp.find_idempotent(&e.fp.one.clone(), &basis_ids, seed, 1 << 20) {
        SearchOutcome::Found(x) => x,
        SearchOutcome::NoneExists => {
            // no idempotent but not local: semisimple quotient is a proper
            // division ring over F_p, impossible; treat as indecomposable
            let id = Mat::identity(m.ring, m.rank);
            return Ok(vec![Summand {
                module: m.clone(),
                embed: GMap { src: m.clone(), dst: m.clone(), f: id.clone() },
                proj: GMap { src: m.clone(), dst: m.clone(), f: id },
            }]);
        }
        SearchOutcome::GaveUp => {
            return Err(Error::Indeterminate("idempotent search exhausted".into()))
        }
    };
    // lift to an idempotent intertwiner over O_b by the cubic Newton step
    let ring = m.ring;
    let mut f = Mat::zeros(ring, m.rank, m.rank);
    for (c, g) in ebar.iter().zip(&e.basis) {
        if *c != 0 {
            f = f.add(&g.f.scale(&ring.from_int(*c as i64)));
        }
    }
    for _ in 0..(2 * (32 - (m.b as u32).leading_zeros()) + 4) {
        let f2 = f.mul(&f).reduce_mod(m.b);
        if f2.eq_mod(&f, m.b) {
            break;
        }
        let f3 = f2.mul(&f).reduce_mod(m.b);
        f = f2.scale(&ring.from_int(3)).sub(&f3.scale(&ring.from_int(2))).reduce_mod(m.b);
    }
    assert!(
        f.mul(&f).eq_mod(&f, m.b),
        "idempotent lift did not converge"
    );
    let (b1, e1) = linalg::col_canonicalize(&f, m.b);
    let (b2, e2) = linalg::col_canonicalize(&Mat::identity(ring, m.rank).sub(&f), m.b);
    if e1.iter().chain(&e2).any(|&x| x != m.b) || b1.cols + b2.cols != m.rank {
        return Err(Error::Indeterminate("idempotent image is not a free summand".into()));
    }
    if b1.cols == 0 || b2.cols == 0 {
        return Err(Error::Indeterminate("idempotent split degenerated".into()));
    }
    let basis = b1.hstack(&b2);
    let binv = linalg::solve_right(&basis, &Mat::identity(ring, m.rank), m.b)
        .ok_or_else(|| Error::Indeterminate("summand basis not invertible".into()))?;
    let split_at = b1.cols;
    let mut out = Vec::new();
    for (lo, hi, bmat) in [(0, split_at, &b1), (split_at, m.rank, &b2)] {
        let rank = hi - lo;
        let rho: Vec<Mat> = m
            .rho
            .iter()
            .map(|r| binv.mul(&r.mul(&basis)).submatrix(lo, hi, lo, hi).reduce_mod(m.b))
            .collect();
        let sub = GModule {
            ring,
            group: m.group.clone(),
            b: m.b,
            rank,
            rho,
            trust: m.trust,
        };
        let embed = GMap { src: sub.clone(), dst: m.clone(), f: (*bmat).clone() };
        let proj = GMap {
            src: m.clone(),
            dst: sub.clone(),
            f: binv.submatrix(lo, hi, 0, m.rank),
        };
        for inner in decompose(&sub, seed ^ (lo as u64).wrapping_mul(0x9e3779b9))? {
            out.push(Summand {
                module: inner.module,
                embed: embed.compose(&inner.embed),
                proj: inner.proj.compose(&proj),
            });
        }
    }
    Ok(out)
}

/// Krull-Schmidt multiset: representatives with multiplicities.
pub fn decompose_grouped(m: &GModule, seed: u64) -> Result<Vec<(GModule, usize)>> {
    let parts = decompose(m, seed)?;
    let mut groups: Vec<(GModule, usize)> = Vec::new();
    'outer: for s in parts {
        for (rep, count) in groups.iter_mut() {
            match repmod::is_isomorphic(rep, &s.module, seed)? {
                repmod::IsoOutcome::Iso(_) => {
                    *count += 1;
                    continue 'outer;
                }
                repmod::IsoOutcome::NotIso => {}
                repmod::IsoOutcome::Unknown => {
                    return Err(Error::Indeterminate("iso grouping inconclusive".into()))
                }
            }
        }
        groups.push((s.module, 1));
    }
    Ok(groups)
}

#[derive(Debug, Clone)]
pub struct Strip {
    pub core: GModule,
    pub embed: GMap,
    pub proj: GMap,
    pub dropped: Vec<GModule>,
}

/// Split off every weakly injective summand (the projective-free
/// convention), with an explicit split embedding of the core.
pub fn strip_weakly_injective(m: &GModule, seed: u64) -> Result<Strip> {
    if m.rank == 0 {
        let id = Mat::zeros(m.ring, 0, 0);
        return Ok(Strip {
            core: m.clone(),
            embed: GMap { src: m.clone(), dst: m.clone(), f: id.clone() },
            proj: GMap { src: m.clone(), dst: m.clone(), f: id },
            dropped: Vec::new(),
        });
    }
    let parts = decompose(m, seed)?;
    let mut kept = Vec::new();
    let mut dropped = Vec::new();
    for s in parts {
        if is_weakly_injective(&s.module)? {
            dropped.push(s.module);
        } else {
            kept.push(s);
        }
    }
    let ring = m.ring;
    let core = kept
        .iter()
        .map(|s| s.module.clone())
        .reduce(|a, b| direct_sum(&a, &b))
        .unwrap_or_else(|| module_zero(ring, m.group.clone(), m.b));
    let mut embed = Mat::zeros(ring, m.rank, 0);
    let mut proj = Mat::zeros(ring, 0, m.rank);
    for s in &kept {
        embed = embed.hstack(&s.embed.f);
        proj = proj.vstack(&s.proj.f);
    }
    Ok(Strip {
        core: core.clone(),
        embed: GMap { src: core.clone(), dst: m.clone(), f: embed },
        proj: GMap { src: m.clone(), dst: core, f: proj },
        dropped,
    })
}

#[derive(Debug, Clone)]
pub struct Syzygy {
    /// Projective-free kernel of the cover.
    pub module: GModule,
    /// Inclusion of the stripped kernel into the cover source.
    pub incl: GMap,
    /// The unstripped kernel.
    pub raw: GModule,
    pub cover: repmod::CoverData,
    pub lost: u32,
}

pub fn syzygy(m: &GModule, seed: u64) -> Result<Syzygy> {
    let data = repmod::syzygy_raw(m)?;
    let strip = strip_weakly_injective(&data.module, seed)?;
    let incl = data.incl.compose(&strip.embed);
    Ok(Syzygy {
        module: strip.core,
        incl,
        raw: data.module,
        cover: data.cover,
        lost: data.lost,
    })
}

#[derive(Debug, Clone)]
pub struct Cosyzygy {
    /// Projective-free cosyzygy.
    pub module: GModule,
    /// The projective middle of 0 -> M -> Q -> (raw cosyzygy) -> 0.
    pub q: GModule,
    /// M -> Q.
    pub incl: GMap,
    /// Q -> module (the stripped quotient map).
    pub surj: GMap,
    /// The unstripped cosyzygy (dual of the raw syzygy of M°); the sequence
    /// M -> Q -> raw_dual is exact, unlike the stripped quotient.
    pub raw_dual: GModule,
    /// Q -> raw_dual with kernel exactly the image of incl.
    pub surj_raw: GMap,
    /// Split section module -> raw_dual of the stripping.
    pub section: GMap,
}

/// Cosyzygy of a lattice via O-duality: dualize, take the syzygy, dualize
/// the exact sequence 0 -> Omega(M°) -> Q' -> M° -> 0 back.
pub fn cosyzygy(m: &GModule, seed: u64) -> Result<Cosyzygy> {
    if !m.is_lattice() {
        return Err(Error::BadModule("cosyzygy needs a lattice".into()));
    }
    let md = dual(m);
    let data = repmod::syzygy_raw(&md)?;
    let strip = strip_weakly_injective(&data.module, seed)?;
    // dualize: Q = (cover source)°, incl = (cover surj)°, raw quotient map
    // = (kernel inclusion)°; project the quotient to the stripped core
    let q = dual(&data.cover.p);
    let incl = data.cover.surj.dual();
    let surj_raw = data.incl.dual();
    let raw_dual = dual(&data.module);
    let core_dual = dual(&strip.core);
    // (strip.embed: core -> raw) dualizes to raw° -> core°
    let strip_dual = strip.embed.dual();
    let surj = GMap {
        src: q.clone(),
        dst: core_dual.clone(),
        f: strip_dual.f.mul(&surj_raw.f).reduce_mod(core_dual.b),
    };
    let section = strip.proj.dual();
    Ok(Cosyzygy {
        module: core_dual,
        q,
        incl,
        surj,
        raw_dual,
        surj_raw,
        section,
    })
}

/// Syzygy at the module's own precision level: the kernel of the projective
/// cover reduced mod pi^b.  For b = 1 this is the kG-syzygy Omega_k.
pub fn syzygy_level(m: &GModule) -> Result<(GModule, GMap)> {
    let ring = m.ring;
    let cover = projective_cover(m)?;
    let b = m.b;
    let kernel = linalg::kernel_right(&cover.surj.f, b);
    let (basis, exps) = linalg::col_canonicalize(&kernel, b);
    if exps.iter().any(|&x| x != b) {
        return Err(Error::BadModule("level syzygy is not free at level b".into()));
    }
    let pb = repmod::reduce(&cover.p, b)?;
    let rho: Vec<Mat> = pb
        .rho
        .iter()
        .map(|r| {
            linalg::solve_right(&basis, &r.mul(&basis), b).ok_or_else(|| {
                Error::BadModule("level syzygy is not G-stable".into())
            })
        })
        .collect::<Result<_>>()?;
    let module = GModule {
        ring,
        group: m.group.clone(),
        b,
        rank: basis.cols,
        rho,
        trust: b,
    };
    let incl = GMap { src: module.clone(), dst: pb, f: basis.reduce_mod(b) };
    Ok((module, incl))
}

/// Cosyzygy at the module's own precision level via duality; for b = 1 this
/// is Omega_k^{-1}.
pub fn cosyzygy_level(m: &GModule) -> Result<GModule> {
    let (s, _) = syzygy_level(&dual(m))?;
    Ok(dual(&s))
}

/// The stable endomorphism ring as an F_p-algebra on the stable generators.
/// Requires every invariant factor to equal 1 (a k-algebra); the unit is
/// the class of the identity.
pub fn stable_end_fp(m: &GModule) -> Result<(StableHomData, FpAlgebra)> {
    let ring = m.ring;
    let st = stable_hom(m, m)?;
    let k = st.gens.len();
    if k == 0 {
        return Err(Error::BadModule("stable endomorphism ring is zero".into()));
    }
    if st.factor_exponents.iter().any(|&x| x != 1) {
        return Err(Error::BadModule(
            "stable endomorphism ring is not a k-algebra".into(),
        ));
    }
    let w = st.w;
    // rows spanning Hom so that the first k coordinates give the class in
    // the stable quotient: stable gens, then projective homs, then pi*Hom
    let mut rows = Mat::zeros(ring, 0, m.rank * m.rank);
    for g in &st.gens {
        rows = rows.vstack(&g.f.vec_cols().transpose());
    }
    rows = rows.vstack(&st.proj.vec_rows);
    for h in &st.hom.basis {
        rows = rows.vstack(&h.f.vec_cols().transpose().scale(&ring.pi_pow(1)));
    }
    let coords_of = |f: &Mat| -> Result<Vec<u64>> {
        let row = f.vec_cols().transpose();
        let c = linalg::solve_left(&rows, &row, w)
            .ok_or_else(|| Error::Indeterminate("endomorphism escaped the hom span".into()))?;
        Ok((0..k).map(|j| ring.to_vec(c.get(0, j))[0] % ring.p).collect())
    };
    let mut mul = vec![vec![vec![0u64; k]; k]; k];
    for i in 0..k {
        for j in 0..k {
            let prod = st.gens[i].f.mul(&st.gens[j].f).reduce_mod(m.b);
            mul[i][j] = coords_of(&prod)?;
        }
    }
    let one = coords_of(&Mat::identity(ring, m.rank))?;
    let fp = FpAlgebra { p: ring.p, dim: k, mul, one };
    Ok((st, fp))
}

/// A generator of the two-sided socle (annihilator of the radical) of the
/// stable endomorphism ring, as a matrix; falls back to the identity when
/// the algebra is semisimple.
pub fn stable_socle_gen(m: &GModule) -> Result<Mat> {
    let ring = m.ring;
    let (st, fp) = stable_end_fp(m)?;
    let rad = fp.radical_basis();
    if rad.is_empty() {
        return Ok(Mat::identity(ring, m.rank));
    }
    // solve r*v = 0 and v*r = 0 for all radical basis elements r
    let dim = fp.dim;
    let mut table: Vec<Vec<u64>> = Vec::new();
    for i in 0..dim {
        let mut e = vec![0u64; dim];
        e[i] = 1;
        let mut row = Vec::new();
        for r in &rad {
            row.extend(fp.mul_vec(r, &e));
            row.extend(fp.mul_vec(&e, r));
        }
        table.push(row);
    }
    let ann = fpalg::fp_nullspace(&table, fp.p);
    let v = ann
        .first()
        .ok_or_else(|| Error::BadModule("stable socle is empty".into()))?;
    let mut f = Mat::zeros(ring, m.rank, m.rank);
    for (c, g) in v.iter().zip(&st.gens) {
        if *c != 0 {
            f = f.add(&g.f.scale(&ring.from_int(*c as i64)));
        }
    }
    Ok(f.reduce_mod(m.b))
}

/// A generator of the socle of stable Hom(x, y) as a bimodule, annihilated
/// by the radicals of the stable endomorphism rings of y (acting on the
/// left) and x (on the right).  Requires all invariant factors to equal 1.
pub fn stable_bimodule_socle_gen(x: &GModule, y: &GModule) -> Result<Mat> {
    let ring = x.ring;
    let st = stable_hom(x, y)?;
    let k = st.gens.len();
    if k == 0 {
        return Err(Error::BadModule("stable hom bimodule is zero".into()));
    }
    if st.factor_exponents.iter().any(|&e| e != 1) {
        return Err(Error::BadModule("stable hom bimodule is not a k-space".into()));
    }
    let w = st.w;
    let mut rows = Mat::zeros(ring, 0, y.rank * x.rank);
    for g in &st.gens {
        rows = rows.vstack(&g.f.vec_cols().transpose());
    }
    rows = rows.vstack(&st.proj.vec_rows);
    for h in &st.hom.basis {
        rows = rows.vstack(&h.f.vec_cols().transpose().scale(&ring.pi_pow(1)));
    }
    let coords_of = |f: &Mat| -> Result<Vec<u64>> {
        let c = linalg::solve_left(&rows, &f.vec_cols().transpose(), w)
            .ok_or_else(|| Error::Indeterminate("map escaped the hom span".into()))?;
        Ok((0..k).map(|j| ring.to_vec(c.get(0, j))[0] % ring.p).collect())
    };
    let lift = |v: &[u64], gens: &[GMap], r: usize, c: usize| -> Mat {
        let mut f = Mat::zeros(ring, r, c);
        for (co, g) in v.iter().zip(gens) {
            if *co != 0 {
                f = f.add(&g.f.scale(&ring.from_int(*co as i64)));
            }
        }
        f
    };
    let (ex, fpx) = stable_end_fp(x)?;
    let (ey, fpy) = stable_end_fp(y)?;
    let radx: Vec<Mat> = fpx
        .radical_basis()
        .iter()
        .map(|v| lift(v, &ex.gens, x.rank, x.rank))
        .collect();
    let rady: Vec<Mat> = fpy
        .radical_basis()
        .iter()
        .map(|v| lift(v, &ey.gens, y.rank, y.rank))
        .collect();
    if radx.is_empty() && rady.is_empty() {
        return Ok(st.gens[0].f.clone());
    }
    let mut table: Vec<Vec<u64>> = Vec::new();
    for g in &st.gens {
        let mut row = Vec::new();
        for r in &rady {
            row.extend(coords_of(&r.mul(&g.f).reduce_mod(y.b))?);
        }
        for r in &radx {
            row.extend(coords_of(&g.f.mul(r).reduce_mod(y.b))?);
        }
        table.push(row);
    }
    let ann = fpalg::fp_nullspace(&table, ring.p);
    let v = ann
        .first()
        .ok_or_else(|| Error::BadModule("stable hom bimodule socle is empty".into()))?;
    Ok(lift(v, &st.gens, y.rank, x.rank).reduce_mod(y.b))
}

#[derive(Debug, Clone)]
pub struct ARData {
    pub left: GModule,
    pub middle: GModule,
    pub right: GModule,
    pub inj: GMap,
    pub surj: GMap,
}

/// Pullback of an almost projective morphism (the supplied socle generator)
/// along the projective cover: middle = {(q, m) : cover(q) = socle(m)}.
/// A lattice whose trust has been degraded is reduced to its trust level
/// first, so every congruence below is exact at the working precision.
pub fn ar_sequence(m: &GModule, socle_gen: &Mat) -> Result<ARData> {
    let mm = if m.b > m.trust { repmod::reduce(m, m.trust)? } else { m.clone() };
    let ring = mm.ring;
    let b = mm.b;
    let s = socle_gen.reduce_mod(b);
    let st = stable_hom(&mm, &mm)?;
    if st.is_stably_zero(&s) {
        return Err(Error::BadModule("socle generator is stably zero".into()));
    }
    let cover = projective_cover(&mm)?;
    let rp = cover.p.rank;
    let system = cover.surj.f.hstack(&s.neg());
    let kernel = linalg::kernel_right(&system, b);
    let (basis, exps) = linalg::col_canonicalize(&kernel, b);
    if exps.iter().any(|&x| x != b) || basis.cols != rp {
        return Err(Error::BadModule("pullback is not free of the expected rank".into()));
    }
    let amb = direct_sum(&cover.p, &mm);
    let rho: Vec<Mat> = amb
        .rho
        .iter()
        .map(|r| {
            linalg::solve_right(&basis, &r.mul(&basis), b)
                .expect("pullback is G-stable")
        })
        .collect();
    let middle = GModule {
        ring,
        group: mm.group.clone(),
        b,
        rank: rp,
        rho,
        trust: b,
    };
    // left term: kernel of the cover at level b, mapped in as (x, 0)
    let (left, left_incl) = syzygy_level(&mm)?;
    let stacked = left_incl.f.vstack(&Mat::zeros(ring, mm.rank, left.rank));
    let inj_f = linalg::solve_right(&basis, &stacked, b)
        .ok_or_else(|| Error::BadModule("kernel does not embed in the pullback".into()))?;
    let surj_f = basis.submatrix(rp, rp + mm.rank, 0, basis.cols);
    Ok(ARData {
        left: left.clone(),
        middle: middle.clone(),
        right: mm.clone(),
        inj: GMap { src: left, dst: middle.clone(), f: inj_f },
        surj: GMap { src: middle, dst: mm, f: surj_f },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dvr::RingSpec;
    use crate::groups::group_cyclic;
    use crate::repmod::{module_regular, module_trivial, reduce, IsoOutcome};
    use std::sync::Arc;

    fn c(n: usize) -> Arc<crate::groups::GroupTable> {
        Arc::new(group_cyclic(n).unwrap())
    }

    #[test]
    fn trace_basics() {
        let r = RingSpec::new(2, 1, 6).unwrap();
        let g = c(2);
        let t = module_trivial(r, g.clone(), 6);
        let tr = trace_map(&Mat::identity(r, 1), &t, &t);
        assert_eq!(tr.f, Mat::from_int_rows(r, &[vec![2]]));
        // trace of an intertwiner is |G| times it
        let reg = module_regular(r, g, 6);
        let f = reg.rho[0].clone();
        let tr2 = trace_map(&f, &reg, &reg);
        assert_eq!(tr2.f, f.scale(&r.from_int(2)));
    }

    #[test]
    fn regular_is_weakly_injective() {
        let r = RingSpec::new(3, 1, 4).unwrap();
        let g = c(3);
        let reg = module_regular(r, g.clone(), 4);
        assert!(is_weakly_injective(&reg).unwrap());
        let kt = reduce(&module_trivial(r, g, 4), 1).unwrap();
        assert!(!is_weakly_injective(&kt).unwrap());
    }

    #[test]
    fn stable_end_of_trivial_c3() {
        let r = RingSpec::new(3, 1, 8).unwrap();
        let g = c(3);
        let t = module_trivial(r, g.clone(), 8);
        let st = stable_hom(&t, &t).unwrap();
        assert_eq!(st.factor_exponents, vec![1]);
        assert_eq!(exponent(&t).unwrap(), 1);
        // stable Hom(O, augmentation ideal) vanishes
        let aug = repmod::syzygy_raw(&t).unwrap().module;
        let st2 = stable_hom(&t, &aug).unwrap();
        assert!(st2.factor_exponents.is_empty());
    }

    #[test]
    fn ramified_exponent_doubles() {
        let r = RingSpec::new(3, 2, 4).unwrap();
        let g = c(3);
        let t = module_trivial(r, g, 8);
        assert_eq!(exponent(&t).unwrap(), 2);
    }

    #[test]
    fn exponent_of_projective_is_zero() {
        let r = RingSpec::new(3, 1, 4).unwrap();
        let reg = module_regular(r, c(3), 4);
        assert_eq!(exponent(&reg).unwrap(), 0);
    }

    #[test]
    fn end_algebras() {
        let r = RingSpec::new(3, 1, 4).unwrap();
        let g = c(3);
        let t = module_trivial(r, g.clone(), 4);
        let e = end_algebra(&t).unwrap();
        assert!(e.is_local);
        assert_eq!(e.basis.len(), 1);
        // End(kC3) = kC3, local with 2-dimensional radical
        let kreg = reduce(&module_regular(r, g, 4), 1).unwrap();
        let e2 = end_algebra(&kreg).unwrap();
        assert!(e2.is_local);
        assert_eq!(e2.fp.dim, 3);
        assert_eq!(e2.radical.len(), 2);
    }

    #[test]
    fn heller_reiner_decomposition() {
        // Omega(k) for C_3 unramified decomposes as O + augmentation ideal
        let r = RingSpec::new(3, 1, 8).unwrap();
        let g = c(3);
        let kt = reduce(&module_trivial(r, g.clone(), 8), 1).unwrap();
        let heller = repmod::syzygy_raw(&kt).unwrap().module;
        assert!(!is_indecomposable(&heller).unwrap());
        let mut ranks: Vec<usize> = decompose(&heller, 11)
            .unwrap()
            .iter()
            .map(|s| s.module.rank)
            .collect();
        ranks.sort_unstable();
        assert_eq!(ranks, vec![1, 2]);
        // witnesses compose to honest split idempotents
        for s in decompose(&heller, 11).unwrap() {
            let idm = s.proj.f.mul(&s.embed.f);
            assert!(idm.eq_mod(&Mat::identity(r, s.module.rank), s.module.trust));
        }
        // the regular kC3 module stays in one piece
        let kreg = reduce(&module_regular(r, g, 8), 1).unwrap();
        assert_eq!(decompose(&kreg, 11).unwrap().len(), 1);
    }

    #[test]
    fn decompose_is_seed_stable() {
        let r = RingSpec::new(3, 1, 8).unwrap();
        let kt = reduce(&module_trivial(r, c(3), 8), 1).unwrap();
        let heller = repmod::syzygy_raw(&kt).unwrap().module;
        let a = decompose_grouped(&heller, 5).unwrap();
        let b = decompose_grouped(&heller, 99).unwrap();
        let ranks = |v: &[(GModule, usize)]| {
            let mut r: Vec<(usize, usize)> = v.iter().map(|(m, c)| (m.rank, *c)).collect();
            r.sort_unstable();
            r
        };
        assert_eq!(ranks(&a), ranks(&b));
    }

    #[test]
    fn stripping() {
        let r = RingSpec::new(3, 1, 4).unwrap();
        let g = c(3);
        let t = module_trivial(r, g.clone(), 4);
        let reg = module_regular(r, g, 4);
        let mix = direct_sum(&t, &reg);
        let s = strip_weakly_injective(&mix, 3).unwrap();
        assert_eq!(s.core.rank, 1);
        assert_eq!(s.dropped.len(), 1);
        assert_eq!(s.dropped[0].rank, 3);
        // the witness is a split pair
        let idm = s.proj.f.mul(&s.embed.f);
        assert!(idm.eq_mod(&Mat::identity(r, 1), 4));
    }

    #[test]
    fn syzygy_and_cosyzygy_invert() {
        let r = RingSpec::new(3, 1, 8).unwrap();
        let g = c(3);
        let t = module_trivial(r, g, 8);
        let om = syzygy(&t, 3).unwrap();
        assert_eq!(om.module.rank, 2);
        let back = cosyzygy(&om.module, 3).unwrap();
        match repmod::is_isomorphic(&back.module, &t, 3).unwrap() {
            IsoOutcome::Iso(_) => {}
            other => panic!("cosyzygy did not invert syzygy: {other:?}"),
        }
        // and the other way round
        let oinv = cosyzygy(&t, 3).unwrap();
        let fwd = syzygy(&oinv.module, 3).unwrap();
        match repmod::is_isomorphic(&fwd.module, &t, 3).unwrap() {
            IsoOutcome::Iso(_) => {}
            other => panic!("syzygy did not invert cosyzygy: {other:?}"),
        }
    }

    #[test]
    fn ar_sequence_with_simple_stable_end() {
        // stable End(O) = k for C_3 unramified: the middle term is the
        // projective cover itself
        let r = RingSpec::new(3, 1, 8).unwrap();
        let g = c(3);
        let t = module_trivial(r, g.clone(), 8);
        let ar = ar_sequence(&t, &Mat::identity(r, 1)).unwrap();
        assert_eq!(ar.middle.rank, 3);
        assert_eq!(ar.left.rank, 2);
        let reg = module_regular(r, g, 8);
        match repmod::is_isomorphic(&ar.middle, &reg, 3).unwrap() {
            IsoOutcome::Iso(_) => {}
            other => panic!("middle term is not the cover: {other:?}"),
        }
        // exactness: surj compose inj vanishes
        assert!(ar.surj.f.mul(&ar.inj.f).is_zero_mod(ar.middle.trust));
        assert!(ar.inj.is_intertwiner());
        assert!(ar.surj.is_intertwiner());
    }
}
