//! Python bindings for the stablemod core: rings, groups, modules over the
//! group algebra, stable-category operations, and the scenario runners.

use std::sync::Arc;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use stablemod::repmod::GModule;
use stablemod::{arlab, dvr, groups, linalg, repmod, scenario, stable};

fn err(e: stablemod::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Truncated valuation ring O = Z[x]/(x^e - p, p^m); pi^e = p, pi^N = 0
/// with N = e * m.
#[pyclass(frozen, skip_from_py_object)]
#[derive(Clone)]
struct Ring {
    spec: dvr::RingSpec,
}

#[pymethods]
impl Ring {
    #[new]
    fn new(p: u64, e: u32, m: u32) -> PyResult<Self> {
        Ok(Ring { spec: dvr::RingSpec::new(p, e, m).map_err(err)? })
    }

    #[getter]
    fn p(&self) -> u64 {
        self.spec.p
    }

    #[getter]
    fn e(&self) -> u32 {
        self.spec.e
    }

    #[getter]
    fn m(&self) -> u32 {
        self.spec.m
    }

    /// pi-adic length N = e * m.
    #[getter]
    fn n(&self) -> u32 {
        self.spec.n()
    }

    fn __repr__(&self) -> String {
        format!("Ring(p={}, e={}, m={})", self.spec.p, self.spec.e, self.spec.m)
    }
}

/// Finite group given by its multiplication table.
#[pyclass(frozen, skip_from_py_object)]
#[derive(Clone)]
struct Group {
    inner: Arc<groups::GroupTable>,
}

#[pymethods]
impl Group {
    #[staticmethod]
    fn cyclic(n: usize) -> PyResult<Self> {
        Ok(Group { inner: Arc::new(groups::group_cyclic(n).map_err(err)?) })
    }

    #[staticmethod]
    fn product(a: &Group, b: &Group) -> PyResult<Self> {
        Ok(Group { inner: Arc::new(groups::group_product(&a.inner, &b.inner).map_err(err)?) })
    }

    /// Group generated by permutations (images of 0..n-1); `bound` caps the
    /// closure size.
    #[staticmethod]
    #[pyo3(signature = (perms, bound = 1024))]
    fn from_perms(perms: Vec<Vec<usize>>, bound: usize) -> PyResult<Self> {
        Ok(Group { inner: Arc::new(groups::group_from_perms(&perms, bound).map_err(err)?) })
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.n
    }

    #[getter]
    fn num_generators(&self) -> usize {
        self.inner.gens.len()
    }

    fn __repr__(&self) -> String {
        format!("Group(order={}, generators={})", self.inner.n, self.inner.gens.len())
    }
}

/// Module over the group algebra O/pi^b [G], given by the generator action.
#[pyclass(frozen, skip_from_py_object)]
#[derive(Clone)]
struct Module {
    inner: GModule,
}

fn wrap(inner: GModule) -> Module {
    Module { inner }
}

#[pymethods]
impl Module {
    /// Rank-1 module with trivial G-action, at full precision (a lattice).
    #[staticmethod]
    fn trivial(ring: &Ring, group: &Group) -> Self {
        let b = ring.spec.n();
        wrap(repmod::module_trivial(ring.spec, group.inner.clone(), b))
    }

    /// The group algebra as a module over itself, at full precision.
    #[staticmethod]
    fn regular(ring: &Ring, group: &Group) -> Self {
        let b = ring.spec.n();
        wrap(repmod::module_regular(ring.spec, group.inner.clone(), b))
    }

    /// Length-l module over k[C_n] with a single unipotent Jordan block.
    #[staticmethod]
    fn jordan(ring: &Ring, group: &Group, l: usize) -> PyResult<Self> {
        Ok(wrap(repmod::module_jordan(ring.spec, group.inner.clone(), l).map_err(err)?))
    }

    /// Module from explicit generator matrices of integers, at precision b.
    #[staticmethod]
    fn from_matrices(ring: &Ring, group: &Group, b: u32, mats: Vec<Vec<Vec<i64>>>) -> PyResult<Self> {
        if mats.len() != group.inner.gens.len() {
            return Err(PyValueError::new_err(format!(
                "expected {} generator matrices, got {}",
                group.inner.gens.len(),
                mats.len()
            )));
        }
        let rank = mats.first().map_or(0, |m| m.len());
        let rho: Vec<linalg::Mat> = mats
            .iter()
            .map(|m| linalg::Mat::from_int_rows(ring.spec, m).reduce_mod(b))
            .collect();
        let m = GModule {
            ring: ring.spec,
            group: group.inner.clone(),
            b,
            rank,
            rho,
            trust: b,
        };
        m.validate().map_err(err)?;
        Ok(wrap(m))
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank
    }

    /// Precision level: the module lives over O/pi^b.
    #[getter]
    fn b(&self) -> u32 {
        self.inner.b
    }

    #[getter]
    fn is_lattice(&self) -> bool {
        self.inner.is_lattice()
    }

    /// Generator action matrices; each entry is the pi-adic coefficient
    /// vector of the ring element.
    fn matrices(&self) -> Vec<Vec<Vec<Vec<u64>>>> {
        let ring = self.inner.ring;
        self.inner
            .rho
            .iter()
            .map(|r| {
                (0..r.rows)
                    .map(|i| (0..r.cols).map(|j| ring.to_vec(r.get(i, j))).collect())
                    .collect()
            })
            .collect()
    }

    fn reduce(&self, b: u32) -> PyResult<Self> {
        Ok(wrap(repmod::reduce(&self.inner, b).map_err(err)?))
    }

    fn dual(&self) -> Self {
        wrap(repmod::dual(&self.inner))
    }

    fn direct_sum(&self, other: &Module) -> Self {
        wrap(repmod::direct_sum(&self.inner, &other.inner))
    }

    /// Projective-free syzygy (kernel of the projective cover).
    #[pyo3(signature = (seed = 7))]
    fn syzygy(&self, seed: u64) -> PyResult<Self> {
        Ok(wrap(stable::syzygy(&self.inner, seed).map_err(err)?.module))
    }

    /// Projective-free cosyzygy of a lattice, via O-duality.
    #[pyo3(signature = (seed = 7))]
    fn cosyzygy(&self, seed: u64) -> PyResult<Self> {
        Ok(wrap(stable::cosyzygy(&self.inner, seed).map_err(err)?.module))
    }

    /// Heller lattice of a k-module: the syzygy taken at full precision.
    fn heller_lattice(&self) -> PyResult<Self> {
        Ok(wrap(arlab::heller_lattice(&self.inner).map_err(err)?))
    }

    /// Exponent a: least power pi^a of the identity that factors through a
    /// weakly injective module (0 when the module itself is one).
    fn exponent(&self) -> PyResult<u32> {
        stable::exponent(&self.inner).map_err(err)
    }

    fn is_weakly_injective(&self) -> PyResult<bool> {
        stable::is_weakly_injective(&self.inner).map_err(err)
    }

    fn is_indecomposable(&self) -> PyResult<bool> {
        stable::is_indecomposable(&self.inner).map_err(err)
    }

    /// Ranks of the indecomposable direct summands, sorted.
    #[pyo3(signature = (seed = 7))]
    fn decompose_ranks(&self, seed: u64) -> PyResult<Vec<usize>> {
        let parts = stable::decompose(&self.inner, seed).map_err(err)?;
        let mut ranks: Vec<usize> = parts.iter().map(|s| s.module.rank).collect();
        ranks.sort_unstable();
        Ok(ranks)
    }

    #[pyo3(signature = (other, seed = 7))]
    fn is_isomorphic(&self, other: &Module, seed: u64) -> PyResult<bool> {
        match repmod::is_isomorphic(&self.inner, &other.inner, seed).map_err(err)? {
            repmod::IsoOutcome::Iso(_) => Ok(true),
            repmod::IsoOutcome::NotIso => Ok(false),
            repmod::IsoOutcome::Unknown => {
                Err(PyValueError::new_err("isomorphism test inconclusive"))
            }
        }
    }

    /// Knorr property of an indecomposable lattice: (is_knorr, exponent).
    #[pyo3(signature = (seed = 7))]
    fn is_knorr(&self, seed: u64) -> PyResult<(bool, u32)> {
        let k = arlab::is_knorr(&self.inner, seed).map_err(err)?;
        Ok((k.is_knorr, k.a))
    }

    fn __repr__(&self) -> String {
        format!(
            "Module(rank={}, b={}, group_order={})",
            self.inner.rank,
            self.inner.b,
            self.inner.group.n
        )
    }
}

/// Image of the adjoint functor R = Omega^{-1} Omega on a torsion module.
#[pyfunction]
#[pyo3(signature = (x, seed = 7))]
fn functor_r(x: &Module, seed: u64) -> PyResult<Module> {
    Ok(wrap(arlab::functor_r(&x.inner, seed).map_err(err)?.module))
}

/// Whether the module is killed by R (finite projective dimension).
#[pyfunction]
#[pyo3(signature = (x, seed = 7))]
fn in_kernel_of_r(x: &Module, seed: u64) -> PyResult<bool> {
    arlab::in_kernel_of_r(&x.inner, seed).map_err(err)
}

/// Invariant-factor exponents of the stable Hom module.
#[pyfunction]
fn stable_hom_factors(m: &Module, n: &Module) -> PyResult<Vec<u32>> {
    Ok(stable::stable_hom(&m.inner, &n.inner).map_err(err)?.factor_exponents)
}

/// Pullback of the projective cover of M along pi^j: the level-j almost
/// split middle-term lattice.
#[pyfunction]
fn pullback_lattice(m: &Module, j: u32) -> PyResult<Module> {
    Ok(wrap(arlab::pullback_lattice(&m.inner, j).map_err(err)?))
}

/// Run a built-in scenario and return the JSON report.
#[pyfunction]
#[pyo3(signature = (name, seed = 7, precision_bump = 0))]
fn run_builtin(name: &str, seed: u64, precision_bump: u32) -> PyResult<String> {
    Ok(scenario::run_builtin(name, seed, precision_bump).map_err(err)?.render_json())
}

/// Run a scenario from its JSON text and return the JSON report.
#[pyfunction]
#[pyo3(signature = (text, precision_bump = 0))]
fn run_scenario(text: &str, precision_bump: u32) -> PyResult<String> {
    let sc = scenario::parse_scenario(text).map_err(err)?;
    Ok(scenario::run_scenario(&sc, precision_bump).map_err(err)?.render_json())
}

#[pymodule]
fn stablemod_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Ring>()?;
    m.add_class::<Group>()?;
    m.add_class::<Module>()?;
    m.add_function(wrap_pyfunction!(functor_r, m)?)?;
    m.add_function(wrap_pyfunction!(in_kernel_of_r, m)?)?;
    m.add_function(wrap_pyfunction!(stable_hom_factors, m)?)?;
    m.add_function(wrap_pyfunction!(pullback_lattice, m)?)?;
    m.add_function(wrap_pyfunction!(run_builtin, m)?)?;
    m.add_function(wrap_pyfunction!(run_scenario, m)?)?;
    Ok(())
}
