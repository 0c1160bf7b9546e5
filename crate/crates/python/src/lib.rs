//! Python bindings: posets, the two monoid families, multifraction
//! operations, and the semi-convergence certificate. Elements and
//! multifractions cross the boundary as their literal strings.

// the #[pymethods] expansion inserts identity conversions
#![allow(clippy::useless_conversion)]

use gcdmf_core::budget::Budgets;
use gcdmf_core::homotopy::{self, Tri};
use gcdmf_core::interval::IntervalMonoid;
use gcdmf_core::monoid::MonoidHandle;
use gcdmf_core::multifraction::{reduce_exhaustive, reduce_to_trivial, Multifraction};
use gcdmf_core::poset::{make_standard, Poset, StdPoset};
use gcdmf_core::presented::{
    self, group_trivial_bounded, verify_group_derivation, CommonMultiple, GroupTriviality,
    PresentedMonoid,
};
use gcdmf_core::report;
use gcdmf_core::zigzag::{self, SemiConv};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn tri_str(t: &Tri) -> String {
    match t {
        Tri::Yes => "YES".to_string(),
        Tri::No => "NO".to_string(),
        Tri::Unknown(d) => format!("UNKNOWN ({d})"),
    }
}

#[pyclass(name = "Poset")]
#[derive(Clone)]
struct PyPoset {
    inner: Poset,
}

#[pymethods]
impl PyPoset {
    /// Build a named example poset: PA, PB, PAn, PCn, bowtie,
    /// truncated_powerset, chain (with the parameter where required).
    #[staticmethod]
    #[pyo3(signature = (name, param=None))]
    fn standard(name: &str, param: Option<usize>) -> PyResult<PyPoset> {
        let which = StdPoset::parse(name)
            .ok_or_else(|| PyValueError::new_err(format!("unknown standard poset `{name}`")))?;
        Ok(PyPoset {
            inner: make_standard(which, param).map_err(err)?,
        })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<PyPoset> {
        Ok(PyPoset {
            inner: Poset::from_json(text).map_err(err)?,
        })
    }

    #[staticmethod]
    fn build(
        name: &str,
        elements: Vec<String>,
        covers: Vec<(String, String)>,
    ) -> PyResult<PyPoset> {
        let el: Vec<&str> = elements.iter().map(|s| s.as_str()).collect();
        let cv: Vec<(&str, &str)> = covers
            .iter()
            .map(|(a, b)| (a.as_str(), b.as_str()))
            .collect();
        Ok(PyPoset {
            inner: Poset::build(name, &el, &cv).map_err(err)?,
        })
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn labels(&self) -> Vec<String> {
        self.inner.labels().to_vec()
    }

    fn covers(&self) -> Vec<(String, String)> {
        self.inner
            .covers()
            .iter()
            .map(|&(a, b)| {
                (
                    self.inner.label(a).to_string(),
                    self.inner.label(b).to_string(),
                )
            })
            .collect()
    }

    fn leq(&self, a: &str, b: &str) -> PyResult<bool> {
        Ok(self.inner.leq(
            self.inner.index_of(a).map_err(err)?,
            self.inner.index_of(b).map_err(err)?,
        ))
    }

    fn is_local_lattice(&self) -> bool {
        self.inner.is_local_lattice()
    }

    fn local_lattice_witness(&self) -> Option<String> {
        self.inner.local_lattice_witness().map(|w| w.to_string())
    }

    fn check_suffnc1(&self) -> bool {
        self.inner.check_suffnc1()
    }

    #[pyo3(signature = (max_len=None))]
    fn check_suffnc2(&self, max_len: Option<usize>) -> PyResult<bool> {
        zigzag::check_suffnc2(&self.inner, max_len, &Budgets::from_env()).map_err(err)
    }

    fn cone_points(&self) -> Vec<(Vec<String>, Option<String>)> {
        self.inner
            .cone_points()
            .into_iter()
            .map(|(comp, cone)| {
                (
                    comp.iter()
                        .map(|&v| self.inner.label(v).to_string())
                        .collect(),
                    cone.map(|c| self.inner.label(c).to_string()),
                )
            })
            .collect()
    }

    fn simply_connected_via_cone(&self) -> bool {
        homotopy::simply_connected_via_cone(&self.inner)
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    fn to_dot(&self) -> String {
        self.inner.to_dot()
    }

    /// All based oriented simple closed zigzag literals up to max_len.
    #[pyo3(signature = (max_len=None))]
    fn simple_closed_zigzags(&self, max_len: Option<usize>) -> PyResult<Vec<String>> {
        let zz = zigzag::enumerate_simple_closed(&self.inner, max_len, &Budgets::from_env())
            .map_err(err)?;
        Ok(zz.iter().map(|z| z.format(&self.inner)).collect())
    }

    fn __repr__(&self) -> String {
        format!(
            "Poset({}, {} elements, {} covers)",
            self.inner.name,
            self.inner.len(),
            self.inner.covers().len()
        )
    }
}

#[pyclass(name = "IntervalMonoid")]
struct PyIntervalMonoid {
    inner: IntervalMonoid,
    budgets: Budgets,
}

#[pymethods]
impl PyIntervalMonoid {
    #[new]
    fn new(poset: PyPoset) -> PyResult<PyIntervalMonoid> {
        Ok(PyIntervalMonoid {
            inner: IntervalMonoid::new(poset.inner).map_err(err)?,
            budgets: Budgets::from_env(),
        })
    }

    fn atoms(&self) -> Vec<String> {
        self.inner
            .atoms()
            .iter()
            .map(|a| self.inner.format_elem(a))
            .collect()
    }

    fn multiply(&self, a: &str, b: &str) -> PyResult<String> {
        let x = self.inner.parse_elem(a).map_err(err)?;
        let y = self.inner.parse_elem(b).map_err(err)?;
        Ok(self.inner.format_elem(&self.inner.mul(&x, &y)))
    }

    fn left_divides(&self, a: &str, b: &str) -> PyResult<bool> {
        let x = self.inner.parse_elem(a).map_err(err)?;
        let y = self.inner.parse_elem(b).map_err(err)?;
        Ok(self.inner.left_divides(&x, &y))
    }

    fn left_gcd(&self, a: &str, b: &str) -> PyResult<String> {
        let x = self.inner.parse_elem(a).map_err(err)?;
        let y = self.inner.parse_elem(b).map_err(err)?;
        Ok(self
            .inner
            .format_elem(&self.inner.left_gcd(&x, &y).map_err(err)?))
    }

    fn right_gcd(&self, a: &str, b: &str) -> PyResult<String> {
        let x = self.inner.parse_elem(a).map_err(err)?;
        let y = self.inner.parse_elem(b).map_err(err)?;
        Ok(self
            .inner
            .format_elem(&self.inner.right_gcd(&x, &y).map_err(err)?))
    }

    fn right_lcm(&self, a: &str, b: &str) -> PyResult<Option<String>> {
        let x = self.inner.parse_elem(a).map_err(err)?;
        let y = self.inner.parse_elem(b).map_err(err)?;
        Ok(self
            .inner
            .right_lcm(&x, &y)
            .map_err(err)?
            .map(|l| self.inner.format_elem(&l)))
    }

    fn left_lcm(&self, a: &str, b: &str) -> PyResult<Option<String>> {
        let x = self.inner.parse_elem(a).map_err(err)?;
        let y = self.inner.parse_elem(b).map_err(err)?;
        Ok(self
            .inner
            .left_lcm(&x, &y)
            .map_err(err)?
            .map(|l| self.inner.format_elem(&l)))
    }

    fn right_divisors(&self, a: &str) -> PyResult<Vec<String>> {
        let x = self.inner.parse_elem(a).map_err(err)?;
        Ok(self
            .inner
            .right_divisors(&x)
            .map_err(err)?
            .iter()
            .map(|d| self.inner.format_elem(d))
            .collect())
    }

    fn left_divisors(&self, a: &str) -> PyResult<Vec<String>> {
        let x = self.inner.parse_elem(a).map_err(err)?;
        Ok(self
            .inner
            .left_divisors(&x)
            .map_err(err)?
            .iter()
            .map(|d| self.inner.format_elem(d))
            .collect())
    }

    /// Exhaustive reduction: all reachable irreducible multifractions.
    fn reduce(&self, mf: &str) -> PyResult<Vec<String>> {
        let parsed = Multifraction::parse(&self.inner, mf).map_err(err)?;
        let set = reduce_exhaustive(&self.inner, &parsed, &self.budgets).map_err(err)?;
        Ok(set.iter().map(|x| x.format(&self.inner)).collect())
    }

    fn reduces_to_trivial(&self, mf: &str) -> PyResult<bool> {
        let parsed = Multifraction::parse(&self.inner, mf).map_err(err)?;
        Ok(reduce_to_trivial(&self.inner, &parsed, &self.budgets)
            .map_err(err)?
            .is_some())
    }

    fn irreducible(&self, mf: &str) -> PyResult<bool> {
        let parsed = Multifraction::parse(&self.inner, mf).map_err(err)?;
        parsed.is_irreducible(&self.inner).map_err(err)
    }

    fn unital(&self, mf: &str) -> PyResult<String> {
        let parsed = Multifraction::parse(&self.inner, mf).map_err(err)?;
        Ok(tri_str(&homotopy::unital(
            &self.inner,
            &parsed,
            &self.budgets,
        )))
    }

    fn equivalent(&self, a: &str, b: &str) -> PyResult<String> {
        let pa = Multifraction::parse(&self.inner, a).map_err(err)?;
        let pb = Multifraction::parse(&self.inner, b).map_err(err)?;
        Ok(tri_str(&homotopy::equivalent(
            &self.inner,
            &pa,
            &pb,
            &self.budgets,
        )))
    }

    /// (verdict, witness or details).
    #[pyo3(signature = (depth=None))]
    fn semiconv_certificate(&self, depth: Option<usize>) -> PyResult<(String, Option<String>)> {
        match zigzag::semiconv_certificate(&self.inner, depth, &self.budgets).map_err(err)? {
            SemiConv::SemiConvergent { .. } => Ok(("SemiConvergent".to_string(), None)),
            SemiConv::NotSemiConvergent { witness, .. } => Ok((
                "NotSemiConvergent".to_string(),
                Some(witness.format(&self.inner)),
            )),
            SemiConv::Inconclusive { details } => Ok(("Inconclusive".to_string(), Some(details))),
        }
    }

    fn three_ore_witness(&self) -> PyResult<Option<(String, String, String)>> {
        let atoms = self.inner.atoms();
        let found =
            gcdmf_core::multifraction::three_ore_witness(&self.inner, &atoms).map_err(err)?;
        Ok(found.map(|(a, b, c)| {
            (
                self.inner.format_elem(&a),
                self.inner.format_elem(&b),
                self.inner.format_elem(&c),
            )
        }))
    }

    fn __repr__(&self) -> String {
        format!("IntervalMonoid({})", self.inner.name())
    }
}

#[pyclass(name = "PresentedMonoid")]
struct PyPresentedMonoid {
    inner: PresentedMonoid,
}

#[pymethods]
impl PyPresentedMonoid {
    /// Build a named presentation: MB, MD, Q11, QC4, QC6, FCk.
    #[staticmethod]
    fn standard(name: &str) -> PyResult<PyPresentedMonoid> {
        presented::make_std_presented(name, &Budgets::from_env())
            .map(|inner| PyPresentedMonoid { inner })
            .ok_or_else(|| PyValueError::new_err(format!("unknown presented monoid `{name}`")))
    }

    /// Parse `atoms: a b; rel: ab = ba; ...`.
    #[staticmethod]
    fn from_text(name: &str, text: &str) -> PyResult<PyPresentedMonoid> {
        let pres = presented::Presentation::from_text(name, text).map_err(err)?;
        Ok(PyPresentedMonoid {
            inner: PresentedMonoid::new(pres, Budgets::from_env()),
        })
    }

    fn atoms(&self) -> Vec<String> {
        self.inner.presentation().atoms().to_vec()
    }

    fn relations(&self) -> Vec<(String, String)> {
        let pres = self.inner.presentation();
        pres.relations()
            .iter()
            .map(|(l, r)| (pres.format_word(l), pres.format_word(r)))
            .collect()
    }

    fn equal(&self, u: &str, v: &str) -> PyResult<bool> {
        let a = self.inner.parse_elem(u).map_err(err)?;
        let b = self.inner.parse_elem(v).map_err(err)?;
        Ok(a == b)
    }

    fn congruence_class(&self, w: &str) -> PyResult<Vec<String>> {
        let pres = self.inner.presentation();
        let word = pres.parse_word(w).map_err(err)?;
        let class = self.inner.congruence_class(&word).map_err(err)?;
        Ok(class.iter().map(|x| pres.format_word(x)).collect())
    }

    /// A shortest common right multiple within the length bound, or None.
    fn common_right_multiple(
        &self,
        targets: Vec<String>,
        max_len: usize,
    ) -> PyResult<Option<String>> {
        let pres = self.inner.presentation();
        let words: Vec<Vec<u8>> = targets
            .iter()
            .map(|t| pres.parse_word(t))
            .collect::<Result<_, _>>()
            .map_err(err)?;
        let refs: Vec<&[u8]> = words.iter().map(|w| w.as_slice()).collect();
        match self
            .inner
            .common_right_multiple_bounded(&refs, max_len)
            .map_err(err)?
        {
            CommonMultiple::Found(w) => Ok(Some(pres.format_word(&w))),
            CommonMultiple::NoneWithin(_) => Ok(None),
        }
    }

    fn maximal_common_right_divisors(&self, u: &str, v: &str) -> PyResult<Vec<String>> {
        let pres = self.inner.presentation();
        let a = pres.parse_word(u).map_err(err)?;
        let b = pres.parse_word(v).map_err(err)?;
        Ok(self
            .inner
            .maximal_common_right_divisors(&a, &b)
            .map_err(err)?
            .iter()
            .map(|w| pres.format_word(w))
            .collect())
    }

    fn reduce(&self, mf: &str) -> PyResult<Vec<String>> {
        let parsed = Multifraction::parse(&self.inner, mf).map_err(err)?;
        let set = reduce_exhaustive(&self.inner, &parsed, self.inner.budgets()).map_err(err)?;
        Ok(set.iter().map(|x| x.format(&self.inner)).collect())
    }

    fn irreducible(&self, mf: &str) -> PyResult<bool> {
        let parsed = Multifraction::parse(&self.inner, mf).map_err(err)?;
        parsed.is_irreducible(&self.inner).map_err(err)
    }

    /// Bounded group-triviality of a signed word like `a b^-1`; returns the
    /// verified derivation as lines, or None if the search gave up.
    #[pyo3(signature = (word, radius=None))]
    fn group_trivial(&self, word: &str, radius: Option<usize>) -> PyResult<Option<Vec<String>>> {
        let pres = self.inner.presentation();
        let signed = presented::parse_signed_word(pres, word).map_err(err)?;
        let budgets = self.inner.budgets();
        let radius = radius.unwrap_or(budgets.group_radius);
        match group_trivial_bounded(pres, &signed, radius, budgets).map_err(err)? {
            GroupTriviality::Yes(d) => {
                verify_group_derivation(pres, &d).map_err(|step| {
                    PyValueError::new_err(format!("derivation broken at step {step}"))
                })?;
                Ok(Some(
                    d.words
                        .iter()
                        .map(|w| presented::format_signed_word(pres, w))
                        .collect(),
                ))
            }
            GroupTriviality::Unknown { .. } => Ok(None),
        }
    }

    /// Is the multifraction's evaluation trivial in the enveloping group?
    fn unital(&self, mf: &str) -> PyResult<String> {
        let parsed = Multifraction::parse(&self.inner, mf).map_err(err)?;
        let word = report::mf_iota_signed(&self.inner, &parsed);
        let budgets = self.inner.budgets();
        match group_trivial_bounded(
            self.inner.presentation(),
            &word,
            budgets.group_radius,
            budgets,
        )
        .map_err(err)?
        {
            GroupTriviality::Yes(_) => Ok("YES".to_string()),
            GroupTriviality::Unknown { exhausted } => Ok(format!("UNKNOWN ({exhausted})")),
        }
    }

    fn __repr__(&self) -> String {
        format!(
            "PresentedMonoid({}, {} atoms, {} relations)",
            self.inner.name(),
            self.inner.presentation().atoms().len(),
            self.inner.presentation().relations().len()
        )
    }
}

/// Run a verification scenario; returns a list of
/// (scenario, [(check, status, evidence)], overall) tuples.
#[pyfunction]
#[pyo3(signature = (scenario, param=None))]
#[allow(clippy::type_complexity)]
fn verify(
    scenario: &str,
    param: Option<usize>,
) -> PyResult<Vec<(String, Vec<(String, String, String)>, String)>> {
    let budgets = Budgets::from_env();
    let reports = report::run_scenario(scenario, param, &budgets)
        .ok_or_else(|| PyValueError::new_err(format!("unknown scenario `{scenario}`")))?;
    Ok(reports
        .into_iter()
        .map(|r| {
            let checks = r
                .checks
                .iter()
                .map(|c| {
                    (
                        c.name.clone(),
                        c.status.as_str().to_string(),
                        c.evidence.clone(),
                    )
                })
                .collect();
            let overall = r.verdict().as_str().to_string();
            (r.scenario.clone(), checks, overall)
        })
        .collect())
}

#[pymodule]
fn gcdmf_python(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPoset>()?;
    m.add_class::<PyIntervalMonoid>()?;
    m.add_class::<PyPresentedMonoid>()?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
