//! Python bindings: number rings with marked primes, log Picard classes,
//! Kummer log mu_n groups, elliptic curves and the log class pairing.

use std::collections::BTreeMap;

use kummerlog::logdiv::{self, MarkedBase, RationalDivisor};
use kummerlog::neron::{self, CurvePoint};
use kummerlog::numring;
use kummerlog::pairing::{CurvePairing as CorePairing, PairingOptions};
use kummerlog::{Error, ErrorKind};
use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;

create_exception!(kummerlog_py, KummerlogError, PyException);
create_exception!(kummerlog_py, ParseError, KummerlogError);
create_exception!(kummerlog_py, InvalidInputError, KummerlogError);
create_exception!(kummerlog_py, UnsupportedError, KummerlogError);
create_exception!(kummerlog_py, ConsistencyError, KummerlogError);

fn err(e: Error) -> PyErr {
    let msg = e.to_string();
    match e.kind() {
        ErrorKind::Parse => ParseError::new_err(msg),
        ErrorKind::InvalidInput => InvalidInputError::new_err(msg),
        ErrorKind::Unsupported => UnsupportedError::new_err(msg),
        ErrorKind::Internal => ConsistencyError::new_err(msg),
    }
}

trait OrPy<T> {
    fn py(self) -> PyResult<T>;
}

impl<T> OrPy<T> for kummerlog::Result<T> {
    fn py(self) -> PyResult<T> {
        self.map_err(err)
    }
}

/// The ring of integers of Q or of Q(sqrt d).
#[pyclass(frozen, module = "kummerlog_py")]
struct NumberRing {
    inner: numring::NumberRing,
}

#[pymethods]
impl NumberRing {
    #[new]
    fn new(ring: &str) -> PyResult<Self> {
        Ok(NumberRing { inner: numring::NumberRing::parse(ring).py()? })
    }

    #[getter]
    fn d(&self) -> i64 {
        self.inner.d()
    }

    #[getter]
    fn discriminant(&self) -> i64 {
        self.inner.discriminant()
    }

    fn class_group(&self) -> PyResult<Vec<u64>> {
        Ok(self.inner.class_group().py()?.invariants().to_vec())
    }

    fn primes_above(&self, p: u64) -> PyResult<Vec<String>> {
        Ok(self.inner.primes_above(p).py()?.iter().map(|q| q.to_string()).collect())
    }

    fn __repr__(&self) -> String {
        format!("NumberRing({:?})", self.inner.to_string())
    }
}

/// A number ring with a finite set D of marked primes.
#[pyclass(frozen, module = "kummerlog_py")]
struct Base {
    inner: MarkedBase,
}

#[pymethods]
impl Base {
    #[new]
    #[pyo3(signature = (ring, primes = ""))]
    fn new(ring: &str, primes: &str) -> PyResult<Self> {
        Ok(Base { inner: MarkedBase::parse(ring, primes).py()? })
    }

    #[getter]
    fn primes(&self) -> Vec<String> {
        self.inner.primes().iter().map(|p| p.to_string()).collect()
    }

    /// Invariant factors of the class group of the ring.
    fn pic_s(&self) -> Vec<u64> {
        self.inner.class_group().invariants().to_vec()
    }

    /// Invariant factors of the class group of the complement of D.
    fn pic_u(&self) -> PyResult<Vec<u64>> {
        Ok(self.inner.pic_of_open().py()?.invariants().to_vec())
    }

    /// The log Picard class of a divisor such as "1/2*(2,1+w) + 3*(7)".
    fn divisor_class(&self, divisor: &str) -> PyResult<LogPicClass> {
        let d = RationalDivisor::parse(&self.inner, divisor).py()?;
        Ok(LogPicClass { inner: logdiv::log_pic_class(&d).py()? })
    }

    /// Both presentations of H^1(mu_n) for the Kummer log flat topology.
    fn kummer_log_group(&self, n: u64) -> PyResult<KummerLogGroup> {
        Ok(KummerLogGroup { inner: logdiv::KummerLogGroup::compute(&self.inner, n).py()? })
    }

    fn __repr__(&self) -> String {
        format!("Base({:?})", self.inner.to_string())
    }
}

#[pyclass(frozen, module = "kummerlog_py")]
struct LogPicClass {
    inner: logdiv::LogPicClass,
}

#[pymethods]
impl LogPicClass {
    #[getter]
    fn order(&self) -> u64 {
        self.inner.order()
    }

    /// Fractional part, as a divisor modulo integral ones.
    #[getter]
    fn nu(&self) -> String {
        self.inner.nu().to_string()
    }

    #[getter]
    fn representative(&self) -> String {
        self.inner.representative().to_string()
    }

    #[getter]
    fn ideal_class(&self) -> Vec<u64> {
        self.inner.ideal_class_coords().to_vec()
    }

    fn is_trivial(&self) -> bool {
        self.inner.is_trivial()
    }

    fn __add__(&self, other: &LogPicClass) -> PyResult<LogPicClass> {
        Ok(LogPicClass { inner: self.inner.add(&other.inner).py()? })
    }

    fn __neg__(&self) -> LogPicClass {
        LogPicClass { inner: self.inner.neg() }
    }

    fn __mul__(&self, k: i64) -> LogPicClass {
        LogPicClass { inner: self.inner.scale(k) }
    }

    fn __rmul__(&self, k: i64) -> LogPicClass {
        self.__mul__(k)
    }

    fn __eq__(&self, other: &LogPicClass) -> PyResult<bool> {
        logdiv::class_equal(&self.inner, &other.inner).py()
    }

    fn __repr__(&self) -> String {
        format!("LogPicClass({:?})", self.inner.to_string())
    }
}

#[pyclass(frozen, module = "kummerlog_py")]
struct KummerLogGroup {
    inner: logdiv::KummerLogGroup,
}

#[pymethods]
impl KummerLogGroup {
    #[getter]
    fn order(&self) -> u64 {
        self.inner.order()
    }

    #[getter]
    fn open_order(&self) -> u64 {
        self.inner.open_order
    }

    #[getter]
    fn fppf_order(&self) -> u64 {
        self.inner.fppf_part_order
    }

    #[getter]
    fn kernel(&self) -> Vec<String> {
        self.inner.kernel.iter().map(|w| w.to_string()).collect()
    }

    fn orders_agree(&self) -> bool {
        self.inner.orders_agree()
    }
}

/// One bad (or requested) prime of an elliptic curve.
#[pyclass(frozen, module = "kummerlog_py")]
struct Reduction {
    inner: neron::ReductionData,
}

#[pymethods]
impl Reduction {
    #[getter]
    fn prime(&self) -> String {
        self.inner.prime().to_string()
    }

    #[getter]
    fn kodaira(&self) -> String {
        self.inner.kodaira().to_string()
    }

    #[getter]
    fn tamagawa(&self) -> u64 {
        self.inner.tamagawa_number()
    }

    #[getter]
    fn conductor_exponent(&self) -> u32 {
        self.inner.conductor_exponent()
    }

    /// Invariant factors of the geometric component group.
    #[getter]
    fn component_group(&self) -> Vec<u64> {
        self.inner.component_group().invariants().to_vec()
    }

    /// The pairing on components as strings "a/b".
    fn pairing_table(&self) -> PyResult<Vec<Vec<String>>> {
        let g = self.inner.component_group();
        g.components()
            .iter()
            .map(|&a| {
                g.components().iter().map(|&b| Ok(g.pairing(a, b)?.to_string())).collect()
            })
            .collect::<kummerlog::Result<_>>()
            .py()
    }

    fn __repr__(&self) -> String {
        format!("Reduction({:?})", self.inner.to_string())
    }
}

/// An elliptic curve [a1,a2,a3,a4,a6] with the primes of bad reduction
/// marked.
#[pyclass(frozen, module = "kummerlog_py")]
struct EllipticCurve {
    inner: CorePairing,
}

impl EllipticCurve {
    fn pt(&self, s: &str) -> PyResult<CurvePoint> {
        self.inner.curve().parse_point(s).py()
    }
}

#[pymethods]
impl EllipticCurve {
    #[new]
    #[pyo3(signature = (coefficients, ring = "Z"))]
    fn new(coefficients: &str, ring: &str) -> PyResult<Self> {
        let r = numring::NumberRing::parse(ring).py()?;
        let e = neron::EllipticCurve::parse(&r, coefficients).py()?;
        Ok(EllipticCurve { inner: CorePairing::with_bad_primes(&e).py()? })
    }

    #[getter]
    fn discriminant(&self) -> String {
        self.inner.curve().discriminant().to_string()
    }

    fn reductions(&self) -> Vec<Reduction> {
        self.inner.reductions().iter().map(|r| Reduction { inner: r.clone() }).collect()
    }

    fn add(&self, p: &str, q: &str) -> PyResult<String> {
        Ok(self.inner.curve().add(&self.pt(p)?, &self.pt(q)?).to_string())
    }

    fn mul(&self, p: &str, k: i64) -> PyResult<String> {
        Ok(self.inner.curve().mul(&self.pt(p)?, k).to_string())
    }

    fn order(&self, p: &str) -> PyResult<u64> {
        self.inner.curve().order(&self.pt(p)?).py()
    }

    /// Component pairings at each bad prime, as "a/b" strings.
    fn monodromy_profile(&self, x: &str, y: &str) -> PyResult<BTreeMap<String, String>> {
        let prof = self.inner.monodromy_profile(&self.pt(x)?, &self.pt(y)?).py()?;
        Ok(prof.iter().map(|(p, v)| (p.to_string(), v.to_string())).collect())
    }

    /// The log class pairing of x with the torsion point y.
    #[pyo3(signature = (x, y, translation = None))]
    fn log_class_pairing(&self, x: &str, y: &str, translation: Option<&str>) -> PyResult<LogPairing> {
        let opts = PairingOptions {
            translation: translation.map(|t| self.pt(t)).transpose()?,
            ..Default::default()
        };
        let v = self.inner.log_class_pairing(&self.pt(x)?, &self.pt(y)?, &opts).py()?;
        Ok(LogPairing {
            class: v.class,
            divisor: v.divisor.to_string(),
            translation: v.translation.to_string(),
            order: v.order,
        })
    }

    fn __repr__(&self) -> String {
        format!("EllipticCurve({:?})", self.inner.curve().to_string())
    }
}

#[pyclass(frozen, module = "kummerlog_py")]
struct LogPairing {
    class: logdiv::LogPicClass,
    #[pyo3(get)]
    divisor: String,
    #[pyo3(get)]
    translation: String,
    #[pyo3(get)]
    order: u64,
}

#[pymethods]
impl LogPairing {
    #[getter]
    fn log_class(&self) -> LogPicClass {
        LogPicClass { inner: self.class.clone() }
    }

    #[getter]
    fn nu(&self) -> String {
        self.class.nu().to_string()
    }

    fn __repr__(&self) -> String {
        format!("LogPairing({:?})", self.class.to_string())
    }
}

#[pymodule]
fn kummerlog_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<NumberRing>()?;
    m.add_class::<Base>()?;
    m.add_class::<LogPicClass>()?;
    m.add_class::<KummerLogGroup>()?;
    m.add_class::<Reduction>()?;
    m.add_class::<EllipticCurve>()?;
    m.add_class::<LogPairing>()?;
    let py = m.py();
    m.add("KummerlogError", py.get_type::<KummerlogError>())?;
    m.add("ParseError", py.get_type::<ParseError>())?;
    m.add("InvalidInputError", py.get_type::<InvalidInputError>())?;
    m.add("UnsupportedError", py.get_type::<UnsupportedError>())?;
    m.add("ConsistencyError", py.get_type::<ConsistencyError>())?;
    Ok(())
}
