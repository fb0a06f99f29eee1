//! Scenario-driven verification harness: structured reports, the three
//! built-in reproduction scenarios, a JSON scenario interpreter, and the
//! structural property sweep over the small-group catalog.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::arlab;
use crate::dvr::RingSpec;
use crate::error::{Error, Result};
use crate::groups::{group_cyclic, group_from_perms, group_product, GroupTable};
use crate::linalg::{self, Mat};
use crate::repmod::{self, reduce, GMap, GModule};
use crate::stable;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "CONFIRMED")]
    Confirmed,
    #[serde(rename = "REFUTED")]
    Refuted,
    #[serde(rename = "INDETERMINATE")]
    Indeterminate,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Confirmed => "CONFIRMED",
            Verdict::Refuted => "REFUTED",
            Verdict::Indeterminate => "INDETERMINATE",
        })
    }
}

pub type Values = BTreeMap<String, String>;

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    /// Human-readable statement of what was checked.
    pub claim: String,
    /// Stable identifier for the claim family.
    pub anchor: String,
    pub inputs: Values,
    pub computed_values: Values,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub name: String,
    pub seed: u64,
    pub reports: Vec<Report>,
    /// Checks that could not finish because working precision ran out.
    pub precision_errors: usize,
}

pub fn kv(pairs: &[(&str, String)]) -> Values {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

impl RunReport {
    pub fn new(name: &str, seed: u64) -> Self {
        RunReport { name: name.to_string(), seed, reports: Vec::new(), precision_errors: 0 }
    }

    pub fn push_result(
        &mut self,
        anchor: &str,
        claim: &str,
        inputs: Values,
        outcome: Result<(Values, bool)>,
    ) {
        let (computed_values, verdict) = match outcome {
            Ok((vals, true)) => (vals, Verdict::Confirmed),
            Ok((vals, false)) => (vals, Verdict::Refuted),
            Err(e) => {
                if matches!(e, Error::Precision { .. }) {
                    self.precision_errors += 1;
                }
                (kv(&[("error", format!("{e}"))]), Verdict::Indeterminate)
            }
        };
        self.reports.push(Report {
            claim: claim.to_string(),
            anchor: anchor.to_string(),
            inputs,
            computed_values,
            verdict,
        });
    }

    pub fn merge(&mut self, other: RunReport) {
        self.reports.extend(other.reports);
        self.precision_errors += other.precision_errors;
    }

    pub fn counts(&self) -> (usize, usize, usize) {
        let c = self.reports.iter().filter(|r| r.verdict == Verdict::Confirmed).count();
        let r = self.reports.iter().filter(|r| r.verdict == Verdict::Refuted).count();
        let i = self.reports.iter().filter(|r| r.verdict == Verdict::Indeterminate).count();
        (c, r, i)
    }

    pub fn all_confirmed(&self) -> bool {
        let (_, r, i) = self.counts();
        r == 0 && i == 0
    }

    /// 0 all confirmed, 1 refuted, 3 precision exhausted, 4 indeterminate.
    pub fn exit_code(&self) -> i32 {
        let (_, refuted, indet) = self.counts();
        if refuted > 0 {
            1
        } else if self.precision_errors > 0 {
            3
        } else if indet > 0 {
            4
        } else {
            0
        }
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# {} (seed {})", self.name, self.seed);
        for r in &self.reports {
            let fmt_vals = |m: &Values| {
                m.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(", ")
            };
            let _ = writeln!(
                out,
                "{:<13} {} | {} | in: {} | out: {}",
                r.verdict.to_string(),
                r.anchor,
                r.claim,
                fmt_vals(&r.inputs),
                fmt_vals(&r.computed_values),
            );
        }
        let (c, r, i) = self.counts();
        let _ = writeln!(out, "summary: confirmed={c} refuted={r} indeterminate={i}");
        out
    }

    pub fn render_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}

fn cyclic(n: usize) -> Result<Arc<GroupTable>> {
    Ok(Arc::new(group_cyclic(n)?))
}

fn module_inputs(ring: RingSpec, group_name: &str, extra: &[(&str, String)]) -> Values {
    let mut m = kv(&[
        ("p", ring.p.to_string()),
        ("e", ring.e.to_string()),
        ("m", ring.m.to_string()),
        ("group", group_name.to_string()),
    ]);
    for (k, v) in extra {
        m.insert(k.to_string(), v.clone());
    }
    m
}

// ---------------------------------------------------------------------------
// built-in scenarios
// ---------------------------------------------------------------------------

pub fn run_builtin(name: &str, seed: u64, bump: u32) -> Result<RunReport> {
    match name {
        "example-gtytg" => builtin_gtytg(seed, bump),
        "heller-reiner-c3" => builtin_heller_reiner(seed, bump),
        "ramified-c3-e2" => builtin_ramified_c3(seed, bump),
        _ => Err(Error::Scenario(format!(
            "unknown builtin '{name}' (expected example-gtytg, heller-reiner-c3, ramified-c3-e2)"
        ))),
    }
}

/// C2 over (p=2, e=1, m=6): the worked cokernel example.
fn builtin_gtytg(seed: u64, bump: u32) -> Result<RunReport> {
    let ring = RingSpec::new(2, 1, 6 + bump)?;
    let g = cyclic(2)?;
    let mut rr = RunReport::new("example-gtytg", seed);
    let reg = repmod::module_regular(ring, g.clone(), ring.n());
    let alpha = GMap {
        src: reg.clone(),
        dst: reg.clone(),
        f: Mat::from_int_rows(ring, &[vec![1, 3], vec![3, 1]]),
    };
    let inputs = module_inputs(ring, "C2", &[("map", "[[1,3],[3,1]]".to_string())]);

    let d = linalg::smith(&alpha.f).d;
    rr.push_result(
        "smith-diagonal",
        "Smith form of the regular-module endomorphism is diag(1, 8)",
        inputs.clone(),
        Ok((kv(&[("pi_exponents", format!("{d:?}"))]), d == vec![0, 3])),
    );

    let factors = linalg::invariant_factors(&Mat::identity(ring, 2), &alpha.f.transpose());
    rr.push_result(
        "cokernel-factors",
        "cokernel of the endomorphism is O/8O",
        inputs.clone(),
        factors.map(|f| (kv(&[("invariant_factors", format!("{f:?}"))]), f == vec![3])),
    );

    let coker = repmod::cokernel_module(&alpha)?;
    let act = ring.to_vec(coker.rho[0].get(0, 0))[0] % 8;
    rr.push_result(
        "generator-action",
        "the group generator acts on the cokernel as multiplication by 5 mod 8",
        inputs.clone(),
        Ok((
            kv(&[("rank", coker.rank.to_string()), ("action_mod_8", act.to_string())]),
            coker.rank == 1 && act == 5,
        )),
    );

    rr.push_result(
        "kernel-of-R",
        "the cokernel lies in the kernel of the adjoint functor R",
        inputs.clone(),
        arlab::in_kernel_of_r(&coker, seed).map(|b| (kv(&[("in_kernel", b.to_string())]), b)),
    );

    rr.push_result(
        "not-weakly-injective",
        "the cokernel is not weakly injective",
        inputs,
        stable::is_weakly_injective(&coker)
            .map(|b| (kv(&[("weakly_injective", b.to_string())]), !b)),
    );
    Ok(rr)
}

/// C3 over (p=3, e=1, m=8): Heller lattice of k splits as O + augmentation
/// ideal; both summands have exponent pi and simple stable endomorphisms.
fn builtin_heller_reiner(seed: u64, bump: u32) -> Result<RunReport> {
    let ring = RingSpec::new(3, 1, 8 + bump)?;
    let g = cyclic(3)?;
    let mut rr = RunReport::new("heller-reiner-c3", seed);
    let inputs = module_inputs(ring, "C3", &[("module", "k".to_string())]);

    let k = reduce(&repmod::module_trivial(ring, g.clone(), ring.n()), 1)?;
    let heller = arlab::heller_lattice(&k)?;
    let parts = stable::decompose(&heller, seed)?;
    let mut ranks: Vec<usize> = parts.iter().map(|s| s.module.rank).collect();
    ranks.sort_unstable();
    rr.push_result(
        "heller-splits",
        "the Heller lattice of k decomposes into summands of ranks 1 and 2",
        inputs.clone(),
        Ok((kv(&[("ranks", format!("{ranks:?}"))]), ranks == vec![1, 2])),
    );

    for s in &parts {
        let tag = format!("rank-{}", s.module.rank);
        let sin = module_inputs(ring, "C3", &[("module", format!("Heller summand {tag}"))]);
        rr.push_result(
            "knorr-exponent-one",
            "the summand is a Knorr lattice of exponent pi",
            sin.clone(),
            arlab::is_knorr(&s.module, seed).map(|kn| {
                (
                    kv(&[("is_knorr", kn.is_knorr.to_string()), ("a", kn.a.to_string())]),
                    kn.is_knorr && kn.a == 1,
                )
            }),
        );
        rr.push_result(
            "stable-end-simple",
            "the stable endomorphism ring of the summand is the residue field",
            sin,
            stable::stable_hom(&s.module, &s.module).map(|st| {
                (
                    kv(&[
                        ("dim", st.gens.len().to_string()),
                        ("factors", format!("{:?}", st.factor_exponents)),
                    ]),
                    st.gens.len() == 1 && st.factor_exponents == vec![1],
                )
            }),
        );
    }

    let r = arlab::functor_r(&k, seed)?;
    rr.push_result(
        "stable-hom-doubles",
        "stable Hom(Rk, Rk) is 2-dimensional over k",
        inputs,
        stable::stable_hom(&r.module, &r.module).map(|st| {
            (
                kv(&[
                    ("dim", st.gens.len().to_string()),
                    ("factors", format!("{:?}", st.factor_exponents)),
                ]),
                st.gens.len() == 2 && st.factor_exponents.iter().all(|&x| x == 1),
            )
        }),
    );
    Ok(rr)
}

/// C3 over the ramified ring (p=3, e=2, m=4): the full suite for both
/// indecomposable non-projective kC3-modules.
fn builtin_ramified_c3(seed: u64, bump: u32) -> Result<RunReport> {
    let ring = RingSpec::new(3, 2, 4 + bump)?;
    let g = cyclic(3)?;
    let mut rr = RunReport::new("ramified-c3-e2", seed);
    let k = reduce(&repmod::module_trivial(ring, g.clone(), ring.n()), 1)?;
    let (j2, _) = stable::syzygy_level(&k)?;
    for (label, m) in [("k", &k), ("rad(kC3)", &j2)] {
        let inputs = module_inputs(ring, "C3", &[("module", label.to_string())]);
        rr.push_result(
            "heller-indecomposable",
            "the Heller lattice is indecomposable over the ramified ring",
            inputs.clone(),
            arlab::heller_lattice(m).and_then(|h| {
                let ind = stable::is_indecomposable(&h)?;
                Ok((kv(&[("rank", h.rank.to_string()), ("indecomposable", ind.to_string())]), ind))
            }),
        );
        rr.push_result(
            "rk-splitting",
            "RM tensor k is M plus the inverse level syzygy of M, with witnesses",
            inputs.clone(),
            arlab::verify_rk(m, seed).map(|w| {
                let ranks: Vec<usize> = w.summands.iter().map(|s| s.module.rank).collect();
                (kv(&[("summand_ranks", format!("{ranks:?}"))]), w.matches)
            }),
        );
        rr.push_result(
            "trivial-extension",
            "stable End(RM) is the trivial extension of stable End_k(M)",
            inputs.clone(),
            arlab::verify_trivial_extension(m, seed).map(|t| {
                (
                    kv(&[
                        ("dim_full", t.dim_a.to_string()),
                        ("dim_base", t.dim_b.to_string()),
                        ("surjective", t.projection_surjective.to_string()),
                        ("square_zero", t.square_zero.to_string()),
                    ]),
                    t.confirmed,
                )
            }),
        );
        rr.push_result(
            "reduced-ar-sequence",
            "the almost split sequence of the Heller lattice reduces mod pi to the kG almost split sequence plus a split summand",
            inputs,
            arlab::verify_reduced_ar(m, seed).map(|a| {
                (
                    kv(&[
                        ("left_ok", a.left_ok.to_string()),
                        ("middle_ok", a.middle_ok.to_string()),
                        ("right_ok", a.right_ok.to_string()),
                    ]),
                    a.confirmed,
                )
            }),
        );
    }
    Ok(rr)
}

/// C5 unramified contrast: the mod-pi splitting of RM fails, and RM is the
/// trivial lattice plus the augmentation ideal.
pub fn run_c5_contrast(seed: u64, bump: u32) -> Result<RunReport> {
    let ring = RingSpec::new(5, 1, 5 + bump)?;
    let g = cyclic(5)?;
    let mut rr = RunReport::new("unramified-c5-contrast", seed);
    // the uniserial length-2 kC5-module: generator acts by a 2x2 Jordan block
    let m2 = GModule {
        ring,
        group: g.clone(),
        b: 1,
        rank: 2,
        rho: vec![Mat::from_int_rows(ring, &[vec![1, 1], vec![0, 1]])],
        trust: 1,
    };
    let inputs = module_inputs(ring, "C5", &[("module", "length-2 uniserial".to_string())]);
    rr.push_result(
        "unramified-rk-fails",
        "RM tensor k is not M plus the inverse level syzygy when e = 1",
        inputs.clone(),
        arlab::verify_rk(&m2, seed).map(|w| {
            let ranks: Vec<usize> = w.summands.iter().map(|s| s.module.rank).collect();
            (kv(&[("summand_ranks", format!("{ranks:?}"))]), !w.matches)
        }),
    );
    let r = arlab::functor_r(&m2, seed)?;
    let parts = stable::decompose(&r.module, seed)?;
    let mut ranks: Vec<usize> = parts.iter().map(|s| s.module.rank).collect();
    ranks.sort_unstable();
    let triv = repmod::module_trivial(ring, g, ring.n());
    let mut has_trivial = false;
    for s in &parts {
        if s.module.rank == 1 {
            if let repmod::IsoOutcome::Iso(_) = repmod::is_isomorphic(&s.module, &triv, seed)? {
                has_trivial = true;
            }
        }
    }
    rr.push_result(
        "unramified-r-splits",
        "RM is the trivial lattice plus the augmentation ideal",
        inputs,
        Ok((
            kv(&[("summand_ranks", format!("{ranks:?}")), ("has_trivial", has_trivial.to_string())]),
            ranks == vec![1, 4] && has_trivial,
        )),
    );
    Ok(rr)
}

/// Middle-term indecomposability criterion across the exponent-2 catalog
/// plus the exponent-1 projective-middle case.
pub fn run_mdterm_suite(seed: u64, bump: u32) -> Result<RunReport> {
    let mut rr = RunReport::new("middle-term-suite", seed);
    let c2 = group_cyclic(2)?;
    let cases: Vec<(&str, RingSpec, Arc<GroupTable>)> = vec![
        ("C2xC2", RingSpec::new(2, 1, 7 + bump)?, Arc::new(group_product(&c2, &c2)?)),
        ("C4", RingSpec::new(2, 1, 7 + bump)?, cyclic(4)?),
        ("C3", RingSpec::new(3, 2, 4 + bump)?, cyclic(3)?),
    ];
    for (name, ring, g) in cases {
        let m = repmod::module_trivial(ring, g, ring.n());
        let inputs = module_inputs(ring, name, &[("module", "trivial lattice".to_string())]);
        rr.push_result(
            "middle-term-criterion",
            "middle term of the almost split sequence is indecomposable iff M/pi^{a-1}M is",
            inputs,
            arlab::ar_middle_term_knorr(&m, seed).map(|rep| {
                (
                    kv(&[
                        ("a", rep.a.to_string()),
                        ("middle_indec", rep.middle_indec.to_string()),
                        ("reduced_indec", format!("{:?}", rep.reduced_indec)),
                    ]),
                    rep.a == 2 && rep.confirmed,
                )
            }),
        );
    }
    // exponent 1: the middle term is the indecomposable projective cover
    let ring = RingSpec::new(3, 1, 8 + bump)?;
    let g = cyclic(3)?;
    let m = repmod::module_trivial(ring, g, ring.n());
    let inputs = module_inputs(ring, "C3", &[("module", "trivial lattice".to_string())]);
    rr.push_result(
        "middle-term-projective",
        "for exponent pi the middle term is the indecomposable projective cover",
        inputs,
        arlab::ar_middle_term_knorr(&m, seed).and_then(|rep| {
            let proj = stable::is_weakly_injective(&rep.middle)?;
            Ok((
                kv(&[
                    ("a", rep.a.to_string()),
                    ("sky_path", rep.sky_path.to_string()),
                    ("middle_indec", rep.middle_indec.to_string()),
                    ("middle_projective", proj.to_string()),
                ]),
                rep.sky_path && rep.middle_indec && proj,
            ))
        }),
    );
    Ok(rr)
}

// ---------------------------------------------------------------------------
// catalogs
// ---------------------------------------------------------------------------

fn contains_iso(list: &[GModule], m: &GModule, seed: u64) -> Result<bool> {
    for x in list {
        match repmod::is_isomorphic(x, m, seed)? {
            repmod::IsoOutcome::Iso(_) => return Ok(true),
            repmod::IsoOutcome::NotIso => {}
            repmod::IsoOutcome::Unknown => {
                return Err(Error::Indeterminate("catalog iso test inconclusive".into()))
            }
        }
    }
    Ok(false)
}

/// Indecomposable lattices reachable from the trivial module, the regular
/// module, and the Heller lattices of the simple modules.
pub fn lattice_catalog(
    ring: RingSpec,
    group: &Arc<GroupTable>,
    seed: u64,
) -> Result<Vec<GModule>> {
    let cat = repmod::catalog(ring, group)?;
    let mut sources = vec![
        repmod::module_trivial(ring, group.clone(), ring.n()),
        repmod::module_regular(ring, group.clone(), ring.n()),
    ];
    for s in &cat.simples {
        sources.push(repmod::syzygy_raw(s)?.module);
    }
    let mut out: Vec<GModule> = Vec::new();
    for src in sources {
        for su in stable::decompose(&src, seed)? {
            if su.module.rank <= 32 && !contains_iso(&out, &su.module, seed)? {
                out.push(su.module);
            }
        }
    }
    Ok(out)
}

/// Indecomposable kG-modules arising as mod-pi reductions of the lattice
/// catalog.
pub fn kmodule_catalog(lattices: &[GModule], seed: u64) -> Result<Vec<GModule>> {
    let mut out: Vec<GModule> = Vec::new();
    for l in lattices {
        let red = reduce(l, 1)?;
        for su in stable::decompose(&red, seed)? {
            if !contains_iso(&out, &su.module, seed)? {
                out.push(su.module);
            }
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// sweep
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Deserialize)]
pub struct SweepConfig {
    #[serde(default = "default_ps")]
    pub p_values: Vec<u64>,
    #[serde(default = "default_es")]
    pub e_values: Vec<u32>,
    #[serde(default = "default_max_order")]
    pub max_group_order: usize,
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default)]
    pub precision_bump: u32,
}

fn default_ps() -> Vec<u64> {
    vec![2, 3]
}
fn default_es() -> Vec<u32> {
    vec![1, 2]
}
fn default_max_order() -> usize {
    9
}
fn default_seed() -> u64 {
    7
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            p_values: default_ps(),
            e_values: default_es(),
            max_group_order: default_max_order(),
            seed: default_seed(),
            precision_bump: 0,
        }
    }
}

pub fn parse_sweep(text: &str) -> Result<SweepConfig> {
    serde_json::from_str(text).map_err(|e| Error::Scenario(format!("sweep config: {e}")))
}

fn sweep_groups(p: u64, max_order: usize) -> Result<Vec<(String, Arc<GroupTable>)>> {
    let c2 = group_cyclic(2)?;
    let mut all: Vec<(String, GroupTable)> = Vec::new();
    match p {
        2 => {
            all.push(("C2".into(), group_cyclic(2)?));
            all.push(("C4".into(), group_cyclic(4)?));
            all.push(("C2xC2".into(), group_product(&c2, &c2)?));
            all.push(("C6".into(), group_cyclic(6)?));
            all.push(("C8".into(), group_cyclic(8)?));
        }
        3 => {
            all.push(("C3".into(), group_cyclic(3)?));
            all.push(("C6".into(), group_cyclic(6)?));
            all.push(("S3".into(), group_from_perms(&[vec![1, 2, 0], vec![1, 0, 2]], 16)?));
            all.push(("C9".into(), group_cyclic(9)?));
        }
        _ => {
            all.push((format!("C{p}"), group_cyclic(p as usize)?));
        }
    }
    Ok(all
        .into_iter()
        .filter(|(_, g)| g.n <= max_order)
        .map(|(n, g)| (n, Arc::new(g)))
        .collect())
}

fn padic_val(mut n: usize, p: u64) -> u32 {
    let mut v = 0;
    while n % p as usize == 0 {
        n /= p as usize;
        v += 1;
    }
    v
}

/// Working precision policy: N = e*m at least two pi-digits above the
/// indecomposability-stability threshold 2*e*nu_p(|G|) + 1.
fn ring_for(p: u64, e: u32, group: &GroupTable, bump: u32) -> Result<RingSpec> {
    let nu = padic_val(group.n, p);
    let target = 2 * e * nu + 3;
    let m = target.div_ceil(e) + bump;
    RingSpec::new(p, e, m)
}

struct SweepCtx {
    ring: RingSpec,
    group: Arc<GroupTable>,
    group_name: String,
    seed: u64,
    lattices: Vec<GModule>,
    kmodules: Vec<GModule>,
}

fn base_inputs(ctx: &SweepCtx, extra: &[(&str, String)]) -> Values {
    module_inputs(ctx.ring, &ctx.group_name, extra)
}

/// Pullback-lattice splittings: exponent of the level-j pullback is j, its
/// reductions at b <= j split off the module and its syzygy, and beyond the
/// exponent the pullback is the direct sum itself.
fn check_pullback_splittings(rr: &mut RunReport, ctx: &SweepCtx) {
    for (idx, m) in ctx.lattices.iter().enumerate() {
        let inputs =
            base_inputs(ctx, &[("lattice", idx.to_string()), ("rank", m.rank.to_string())]);
        let outcome = (|| {
            let a = stable::exponent(m)?;
            let mut vals = kv(&[("a", a.to_string())]);
            if a == 0 {
                vals.insert("skipped".into(), "weakly injective".into());
                return Ok((vals, true));
            }
            let om = repmod::syzygy_raw(m)?.module;
            let mut ok = true;
            for j in 1..=a {
                let b_lat = arlab::pullback_lattice(m, j)?;
                let ej = stable::exponent(&b_lat)?;
                vals.insert(format!("exp_pullback_{j}"), ej.to_string());
                ok &= ej == j;
                for b in 1..=j {
                    let lhs = reduce(&b_lat, b)?;
                    let rhs = repmod::direct_sum(&reduce(m, b)?, &reduce(&om, b)?);
                    let split = arlab::same_iso_multiset(&lhs, &rhs, ctx.seed)?;
                    vals.insert(format!("split_{j}_{b}"), split.to_string());
                    ok &= split;
                }
            }
            if a + 1 < ctx.ring.n() {
                let b_lat = arlab::pullback_lattice(m, a + 1)?;
                let whole =
                    arlab::same_iso_multiset(&b_lat, &repmod::direct_sum(m, &om), ctx.seed)?;
                vals.insert("beyond_exponent_sum".into(), whole.to_string());
                ok &= whole;
            }
            Ok((vals, ok))
        })();
        rr.push_result(
            "pullback-splitting",
            "level-j pullback lattices have exponent j, split mod pi^b for b <= j, and equal M + Omega M beyond the exponent",
            inputs,
            outcome,
        );
    }
}

/// Reduction past both exponents keeps stable generators stably nonzero.
fn check_reduction_injective(rr: &mut RunReport, ctx: &SweepCtx) {
    let outcome = (|| {
        let mut pairs = 0usize;
        let mut gens = 0usize;
        let mut ok = true;
        for m in &ctx.lattices {
            for n in &ctx.lattices {
                let b0 = stable::exponent(m)?.max(stable::exponent(n)?).max(1);
                if b0 >= ctx.ring.n() {
                    continue;
                }
                let st = stable::stable_hom(m, n)?;
                if st.gens.is_empty() {
                    continue;
                }
                let stb = stable::stable_hom(&reduce(m, b0)?, &reduce(n, b0)?)?;
                pairs += 1;
                for g in &st.gens {
                    gens += 1;
                    ok &= !stb.is_stably_zero(&g.f.reduce_mod(b0));
                }
            }
        }
        Ok((kv(&[("pairs", pairs.to_string()), ("generators", gens.to_string())]), ok))
    })();
    rr.push_result(
        "reduction-injective",
        "reduction mod pi^b at b >= max exponents keeps every stable generator stably nonzero",
        base_inputs(ctx, &[]),
        outcome,
    );
}

/// Reduction at the exponent has at most two indecomposable summands.
fn check_exponent_reduction_summands(rr: &mut RunReport, ctx: &SweepCtx) {
    for (idx, m) in ctx.lattices.iter().enumerate() {
        let inputs =
            base_inputs(ctx, &[("lattice", idx.to_string()), ("rank", m.rank.to_string())]);
        let outcome = (|| {
            let a = stable::exponent(m)?;
            if a == 0 {
                return Ok((kv(&[("skipped", "weakly injective".into())]), true));
            }
            let red = reduce(m, a)?;
            let count: usize =
                stable::decompose_grouped(&red, ctx.seed)?.iter().map(|(_, c)| c).sum();
            Ok((kv(&[("a", a.to_string()), ("summands", count.to_string())]), count <= 2))
        })();
        rr.push_result(
            "exponent-reduction-summands",
            "M/pi^a M has at most two indecomposable summands",
            inputs,
            outcome,
        );
    }
}

/// Exponent pi iff the lattice is a summand of R applied to a kG-module;
/// and for exponent >= 2 the almost split sequence splits mod pi.
fn check_r_image_and_mod_pi_split(rr: &mut RunReport, ctx: &SweepCtx) {
    // collect the indecomposable summands of R over the kG catalog once
    let r_summands: Result<Vec<GModule>> = (|| {
        let mut out = Vec::new();
        for x in &ctx.kmodules {
            let r = arlab::functor_r(x, ctx.seed)?;
            if r.module.rank == 0 {
                continue;
            }
            for su in stable::decompose(&r.module, ctx.seed)? {
                if !contains_iso(&out, &su.module, ctx.seed)? {
                    out.push(su.module);
                }
            }
        }
        Ok(out)
    })();
    let r_summands = match r_summands {
        Ok(v) => v,
        Err(e) => {
            rr.push_result(
                "r-image-exponent",
                "exponent pi iff a summand of R of a kG-module",
                base_inputs(ctx, &[]),
                Err(e),
            );
            return;
        }
    };
    for (idx, m) in ctx.lattices.iter().enumerate() {
        let inputs =
            base_inputs(ctx, &[("lattice", idx.to_string()), ("rank", m.rank.to_string())]);
        let outcome = (|| {
            let a = stable::exponent(m)?;
            let appears = contains_iso(&r_summands, m, ctx.seed)?;
            let mut vals = kv(&[("a", a.to_string()), ("r_summand", appears.to_string())]);
            let mut ok = (a == 1) == appears;
            if a >= 2 {
                // the sequence through the level-(a-1) pullback splits mod pi
                let b_lat = arlab::pullback_lattice(m, a - 1)?;
                let om = repmod::syzygy_raw(m)?.module;
                let split = arlab::same_iso_multiset(
                    &reduce(&b_lat, 1)?,
                    &repmod::direct_sum(&reduce(m, 1)?, &reduce(&om, 1)?),
                    ctx.seed,
                )?;
                vals.insert("mod_pi_split".into(), split.to_string());
                ok &= split;
            }
            Ok((vals, ok))
        })();
        rr.push_result(
            "r-image-exponent",
            "exponent pi iff a summand of R of a kG-module; otherwise the almost split sequence splits mod pi",
            inputs,
            outcome,
        );
    }
}

/// Covers double under R, and stable homs between R's of simples are
/// 2-dimensional on the diagonal and vanish across distinct simples.
fn check_simple_r_covers(rr: &mut RunReport, ctx: &SweepCtx) {
    let outcome = (|| {
        let cat = repmod::catalog(ctx.ring, &ctx.group)?;
        let mut ok = true;
        let mut vals = Values::new();
        let mut rs = Vec::new();
        for (i, s) in cat.simples.iter().enumerate() {
            let r = arlab::functor_r(s, ctx.seed)?;
            let mut cover_s: Vec<usize> =
                repmod::projective_cover(s)?.summands.iter().map(|&(p, _)| p).collect();
            let mut cover_r: Vec<usize> =
                repmod::projective_cover(&r.module)?.summands.iter().map(|&(p, _)| p).collect();
            cover_s.sort_unstable();
            cover_r.sort_unstable();
            let mut doubled: Vec<usize> =
                cover_s.iter().flat_map(|&p| [p, p]).collect();
            doubled.sort_unstable();
            vals.insert(format!("cover_double_{i}"), (cover_r == doubled).to_string());
            ok &= cover_r == doubled;
            rs.push(r.module);
        }
        // the diagonal dimension scales with the endomorphism field of the
        // simple (2 over End(S), so 2 * dim_k End(S) over k)
        let end_dims: Vec<usize> = cat
            .simples
            .iter()
            .map(|s| repmod::hom_space(s, s).map(|h| h.basis.len()))
            .collect::<Result<_>>()?;
        for i in 0..rs.len() {
            for j in 0..rs.len() {
                let st = stable::stable_hom(&rs[i], &rs[j])?;
                let dim = st.gens.len();
                let expect = if i == j { 2 * end_dims[i] } else { 0 };
                vals.insert(format!("dim_{i}_{j}"), dim.to_string());
                ok &= dim == expect && st.factor_exponents.iter().all(|&x| x == 1);
            }
        }
        Ok((vals, ok))
    })();
    rr.push_result(
        "simple-r-covers",
        "P(RS) is P(S) twice, and dim stable Hom(RS, RT) is 2 on the diagonal and 0 off it",
        base_inputs(ctx, &[]),
        outcome,
    );
}

/// Exponent is computed by the Sylow p-subgroup restriction.
fn check_sylow_exponent(rr: &mut RunReport, ctx: &SweepCtx) {
    let sylow = ctx.group.sylow_gens(ctx.ring.p);
    let sub = ctx.group.closure_of(&sylow);
    if sub.len() == ctx.group.n {
        return; // restriction is the identity
    }
    for (idx, m) in ctx.lattices.iter().enumerate() {
        let inputs =
            base_inputs(ctx, &[("lattice", idx.to_string()), ("rank", m.rank.to_string())]);
        let outcome = (|| {
            let a = stable::exponent(m)?;
            let down = repmod::restrict(m, &sylow)?;
            let a_down = stable::exponent(&down)?;
            Ok((
                kv(&[("a", a.to_string()), ("a_sylow", a_down.to_string())]),
                a == a_down,
            ))
        })();
        rr.push_result(
            "sylow-restriction-exponent",
            "the exponent equals the exponent of the Sylow restriction",
            inputs,
            outcome,
        );
    }
}

/// Decomposition data is unchanged when the p-adic precision grows by one.
fn check_precision_stability(rr: &mut RunReport, ctx: &SweepCtx) {
    let outcome = (|| {
        let summary = |ring: RingSpec| -> Result<(usize, Vec<usize>)> {
            let lat = lattice_catalog(ring, &ctx.group, ctx.seed)?;
            let mut ranks: Vec<usize> = lat.iter().map(|m| m.rank).collect();
            ranks.sort_unstable();
            Ok((lat.len(), ranks))
        };
        let here = summary(ctx.ring)?;
        let bumped = summary(RingSpec::new(ctx.ring.p, ctx.ring.e, ctx.ring.m + 1)?)?;
        Ok((
            kv(&[
                ("classes", format!("{} vs {}", here.0, bumped.0)),
                ("ranks", format!("{:?} vs {:?}", here.1, bumped.1)),
            ]),
            here == bumped,
        ))
    })();
    rr.push_result(
        "precision-stability",
        "iso-class count and ranks of the lattice catalog are unchanged at precision m + 1",
        base_inputs(ctx, &[]),
        outcome,
    );
}

pub fn run_sweep(cfg: &SweepConfig) -> RunReport {
    let mut rr = RunReport::new("structural-sweep", cfg.seed);
    for &p in &cfg.p_values {
        for &e in &cfg.e_values {
            let groups = match sweep_groups(p, cfg.max_group_order) {
                Ok(g) => g,
                Err(err) => {
                    rr.push_result(
                        "sweep-setup",
                        "group catalog construction",
                        kv(&[("p", p.to_string()), ("e", e.to_string())]),
                        Err(err),
                    );
                    continue;
                }
            };
            for (group_name, group) in groups {
                let setup = (|| -> Result<SweepCtx> {
                    let ring = ring_for(p, e, &group, cfg.precision_bump)?;
                    let lattices = lattice_catalog(ring, &group, cfg.seed)?;
                    let kmodules = kmodule_catalog(&lattices, cfg.seed)?;
                    Ok(SweepCtx {
                        ring,
                        group,
                        group_name: group_name.clone(),
                        seed: cfg.seed,
                        lattices,
                        kmodules,
                    })
                })();
                let ctx = match setup {
                    Ok(ctx) => ctx,
                    Err(err) => {
                        rr.push_result(
                            "sweep-setup",
                            "catalog construction",
                            kv(&[
                                ("p", p.to_string()),
                                ("e", e.to_string()),
                                ("group", group_name),
                            ]),
                            Err(err),
                        );
                        continue;
                    }
                };
                check_pullback_splittings(&mut rr, &ctx);
                check_reduction_injective(&mut rr, &ctx);
                check_exponent_reduction_summands(&mut rr, &ctx);
                check_r_image_and_mod_pi_split(&mut rr, &ctx);
                check_simple_r_covers(&mut rr, &ctx);
                check_sylow_exponent(&mut rr, &ctx);
                check_precision_stability(&mut rr, &ctx);
            }
        }
    }
    rr
}

/// Adjunction suite: stable Hom(M, X) and stable Hom(M, RX) share invariant
/// factors and every stable generator factors through the counit.
pub fn run_adjunction_suite(seed: u64, bump: u32) -> Result<(usize, RunReport)> {
    let mut rr = RunReport::new("adjunction-suite", seed);
    let c2 = group_cyclic(2)?;
    let configs: Vec<(u64, u32, &str, Arc<GroupTable>)> = vec![
        (2, 1, "C2", cyclic(2)?),
        (2, 1, "C4", cyclic(4)?),
        (2, 1, "C2xC2", Arc::new(group_product(&c2, &c2)?)),
        (2, 2, "C2", cyclic(2)?),
        (3, 1, "C3", cyclic(3)?),
        (3, 2, "C3", cyclic(3)?),
        (5, 1, "C5", cyclic(5)?),
    ];
    let mut pairs = 0usize;
    for (p, e, gname, group) in configs {
        let ring = ring_for(p, e, &group, bump)?;
        let lattices = lattice_catalog(ring, &group, seed)?;
        let mut torsions = kmodule_catalog(&lattices, seed)?;
        // a torsion module of height two, for non-semisimple coefficients
        let triv = repmod::module_trivial(ring, group.clone(), ring.n());
        if ring.n() > 2 {
            torsions.push(reduce(&triv, 2)?);
        }
        for (xi, x) in torsions.iter().enumerate() {
            let r = match arlab::functor_r(x, seed) {
                Ok(r) => r,
                Err(err) => {
                    rr.push_result(
                        "adjunction",
                        "stable Hom(M, X) matches stable Hom(M, RX) through the counit",
                        module_inputs(ring, gname, &[("torsion", xi.to_string())]),
                        Err(err),
                    );
                    continue;
                }
            };
            for (mi, m) in lattices.iter().enumerate() {
                pairs += 1;
                let inputs = module_inputs(
                    ring,
                    gname,
                    &[
                        ("lattice", mi.to_string()),
                        ("lattice_rank", m.rank.to_string()),
                        ("torsion", xi.to_string()),
                        ("torsion_rank", x.rank.to_string()),
                    ],
                );
                rr.push_result(
                    "adjunction",
                    "stable Hom(M, X) matches stable Hom(M, RX) through the counit",
                    inputs,
                    arlab::verify_adjunction(m, x, &r, seed).map(|a| {
                        (
                            kv(&[
                                ("factors_match", a.factors_match.to_string()),
                                ("counit_factors", a.counit_factors.to_string()),
                            ]),
                            a.confirmed,
                        )
                    }),
                );
            }
        }
    }
    Ok((pairs, rr))
}

// ---------------------------------------------------------------------------
// scenario files
// ---------------------------------------------------------------------------

#[derive(Debug, Deserialize)]
pub struct ScenarioFile {
    pub name: String,
    pub ring: RingArgs,
    pub group: GroupSpec,
    #[serde(default)]
    pub modules: Vec<ModuleDef>,
    #[serde(default)]
    pub checks: Vec<CheckDef>,
    #[serde(default = "default_seed")]
    pub seed: u64,
}

#[derive(Debug, Deserialize)]
pub struct RingArgs {
    pub p: u64,
    pub e: u32,
    pub m: u32,
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupSpec {
    Cyclic(usize),
    Product(Vec<usize>),
    Perms(Vec<Vec<usize>>),
}

#[derive(Debug, Deserialize)]
pub struct ModuleDef {
    pub name: String,
    pub op: String,
    #[serde(default)]
    pub of: Option<String>,
    #[serde(default)]
    pub with: Option<String>,
    #[serde(default)]
    pub b: Option<u32>,
    #[serde(default)]
    pub matrix: Option<Vec<Vec<i64>>>,
}

#[derive(Debug, Deserialize)]
pub struct CheckDef {
    pub check: String,
    pub module: String,
    #[serde(default)]
    pub other: Option<String>,
    #[serde(default)]
    pub expect: Option<serde_json::Value>,
}

pub fn parse_scenario(text: &str) -> Result<ScenarioFile> {
    serde_json::from_str(text).map_err(|e| Error::Scenario(format!("scenario file: {e}")))
}

fn build_group(spec: &GroupSpec) -> Result<GroupTable> {
    match spec {
        GroupSpec::Cyclic(n) => group_cyclic(*n),
        GroupSpec::Product(orders) => {
            if orders.is_empty() {
                return Err(Error::Scenario("empty product".into()));
            }
            let mut g = group_cyclic(orders[0])?;
            for &o in &orders[1..] {
                g = group_product(&g, &group_cyclic(o)?)?;
            }
            Ok(g)
        }
        GroupSpec::Perms(perms) => group_from_perms(perms, 10_000),
    }
}

pub fn run_scenario(sc: &ScenarioFile, bump: u32) -> Result<RunReport> {
    let ring = RingSpec::new(sc.ring.p, sc.ring.e, sc.ring.m + bump)?;
    let group = Arc::new(build_group(&sc.group)?);
    let seed = sc.seed;
    let mut env: Vec<(String, GModule)> = Vec::new();
    let lookup = |env: &[(String, GModule)], name: &str| -> Result<GModule> {
        env.iter()
            .find(|(n, _)| n == name)
            .map(|(_, m)| m.clone())
            .ok_or_else(|| Error::Scenario(format!("unknown module '{name}'")))
    };
    for def in &sc.modules {
        if env.iter().any(|(n, _)| n == &def.name) {
            return Err(Error::Scenario(format!("duplicate module name '{}'", def.name)));
        }
        let need_of = || -> Result<GModule> {
            let of = def
                .of
                .as_deref()
                .ok_or_else(|| Error::Scenario(format!("op '{}' needs 'of'", def.op)))?;
            lookup(&env, of)
        };
        let built = match def.op.as_str() {
            "trivial" => repmod::module_trivial(ring, group.clone(), ring.n()),
            "regular" => repmod::module_regular(ring, group.clone(), ring.n()),
            "reduce" => {
                let b = def
                    .b
                    .ok_or_else(|| Error::Scenario("reduce needs 'b'".into()))?;
                reduce(&need_of()?, b)?
            }
            "dual" => repmod::dual(&need_of()?),
            "syzygy" => repmod::syzygy_raw(&need_of()?)?.module,
            "syzygy_level" => stable::syzygy_level(&need_of()?)?.0,
            "cosyzygy_level" => stable::cosyzygy_level(&need_of()?)?,
            "sum" => {
                let with = def
                    .with
                    .as_deref()
                    .ok_or_else(|| Error::Scenario("sum needs 'with'".into()))?;
                repmod::direct_sum(&need_of()?, &lookup(&env, with)?)
            }
            "cokernel" => {
                let m = need_of()?;
                let rows = def
                    .matrix
                    .as_ref()
                    .ok_or_else(|| Error::Scenario("cokernel needs 'matrix'".into()))?;
                let f = Mat::from_int_rows(ring, rows);
                if f.rows != m.rank || f.cols != m.rank {
                    return Err(Error::Scenario("cokernel matrix shape".into()));
                }
                repmod::cokernel_module(&GMap { src: m.clone(), dst: m.clone(), f })?
            }
            other => return Err(Error::Scenario(format!("unknown op '{other}'"))),
        };
        env.push((def.name.clone(), built));
    }

    let mut rr = RunReport::new(&sc.name, seed);
    for chk in &sc.checks {
        let m = lookup(&env, &chk.module)?;
        let inputs = kv(&[
            ("module", chk.module.clone()),
            ("expect", chk.expect.as_ref().map(|v| v.to_string()).unwrap_or_default()),
        ]);
        let expect_bool = |default: bool| -> bool {
            chk.expect.as_ref().and_then(|v| v.as_bool()).unwrap_or(default)
        };
        let expect_int = || -> Option<i64> { chk.expect.as_ref().and_then(|v| v.as_i64()) };
        let outcome: Result<(Values, bool)> = match chk.check.as_str() {
            "weakly_injective" => stable::is_weakly_injective(&m).map(|b| {
                (kv(&[("weakly_injective", b.to_string())]), b == expect_bool(true))
            }),
            "in_kernel_of_r" => arlab::in_kernel_of_r(&m, seed).map(|b| {
                (kv(&[("in_kernel", b.to_string())]), b == expect_bool(true))
            }),
            "indecomposable" => stable::is_indecomposable(&m).map(|b| {
                (kv(&[("indecomposable", b.to_string())]), b == expect_bool(true))
            }),
            "exponent" => stable::exponent(&m).map(|a| {
                (
                    kv(&[("exponent", a.to_string())]),
                    expect_int().map(|x| x == a as i64).unwrap_or(true),
                )
            }),
            "decompose_ranks" => stable::decompose(&m, seed).and_then(|parts| {
                let mut ranks: Vec<usize> = parts.iter().map(|s| s.module.rank).collect();
                ranks.sort_unstable();
                let want: Option<Vec<usize>> = chk.expect.as_ref().and_then(|v| {
                    v.as_array().map(|a| {
                        a.iter().filter_map(|x| x.as_u64()).map(|x| x as usize).collect()
                    })
                });
                let ok = want.map(|w| w == ranks).unwrap_or(true);
                Ok((kv(&[("ranks", format!("{ranks:?}"))]), ok))
            }),
            "knorr" => arlab::is_knorr(&m, seed).map(|k| {
                (
                    kv(&[("is_knorr", k.is_knorr.to_string()), ("a", k.a.to_string())]),
                    k.is_knorr == expect_bool(true),
                )
            }),
            "rk" => arlab::verify_rk(&m, seed).map(|w| {
                (kv(&[("matches", w.matches.to_string())]), w.matches == expect_bool(true))
            }),
            "trivial_extension" => arlab::verify_trivial_extension(&m, seed).map(|t| {
                (kv(&[("confirmed", t.confirmed.to_string())]), t.confirmed)
            }),
            "reduced_ar" => arlab::verify_reduced_ar(&m, seed).map(|a| {
                (kv(&[("confirmed", a.confirmed.to_string())]), a.confirmed)
            }),
            "stable_end_dim" => stable::stable_hom(&m, &m).map(|st| {
                (
                    kv(&[("dim", st.gens.len().to_string())]),
                    expect_int().map(|x| x == st.gens.len() as i64).unwrap_or(true),
                )
            }),
            "iso" => {
                let other = chk
                    .other
                    .as_deref()
                    .ok_or_else(|| Error::Scenario("iso needs 'other'".into()))?;
                let n = lookup(&env, other)?;
                match repmod::is_isomorphic(&m, &n, seed)? {
                    repmod::IsoOutcome::Iso(_) => {
                        Ok((kv(&[("iso", "true".into())]), expect_bool(true)))
                    }
                    repmod::IsoOutcome::NotIso => {
                        Ok((kv(&[("iso", "false".into())]), !expect_bool(true)))
                    }
                    repmod::IsoOutcome::Unknown => {
                        Err(Error::Indeterminate("iso test inconclusive".into()))
                    }
                }
            }
            other => return Err(Error::Scenario(format!("unknown check '{other}'"))),
        };
        rr.push_result(&format!("check-{}", chk.check), &chk.check, inputs, outcome);
    }
    Ok(rr)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_gtytg_all_confirmed_and_deterministic() {
        let a = run_builtin("example-gtytg", 7, 0).unwrap();
        assert!(a.all_confirmed(), "{}", a.render_text());
        let b = run_builtin("example-gtytg", 7, 0).unwrap();
        assert_eq!(a.render_json(), b.render_json());
        assert_eq!(a.exit_code(), 0);
    }

    #[test]
    fn unknown_builtin_is_an_error() {
        assert!(run_builtin("nope", 7, 0).is_err());
    }

    #[test]
    fn scenario_roundtrip_runs() {
        let text = r#"{
            "name": "cokernel-demo",
            "ring": {"p": 2, "e": 1, "m": 6},
            "group": {"cyclic": 2},
            "modules": [
                {"name": "reg", "op": "regular"},
                {"name": "c", "op": "cokernel", "of": "reg", "matrix": [[1,3],[3,1]]}
            ],
            "checks": [
                {"check": "weakly_injective", "module": "c", "expect": false},
                {"check": "in_kernel_of_r", "module": "c", "expect": true}
            ],
            "seed": 7
        }"#;
        let sc = parse_scenario(text).unwrap();
        let rr = run_scenario(&sc, 0).unwrap();
        assert!(rr.all_confirmed(), "{}", rr.render_text());
    }

    #[test]
    fn sweep_config_defaults() {
        let cfg = parse_sweep("{}").unwrap();
        assert_eq!(cfg.p_values, vec![2, 3]);
        assert_eq!(cfg.max_group_order, 9);
    }

    #[test]
    fn c5_contrast_confirms() {
        let rr = run_c5_contrast(7, 0).unwrap();
        assert!(rr.all_confirmed(), "{}", rr.render_text());
    }
}
