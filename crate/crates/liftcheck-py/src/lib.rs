//! Python bindings for the liftcheck library: free-word Fox calculus,
//! catalog groups, p-group presentations, central extensions, liftability,
//! and subextension checks, mirroring the CLI's JSON spec formats.

use std::str::FromStr;
use std::sync::Arc;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use liftcheck::catalog::{parse_extension_spec, parse_group_spec, ParsedGroup};
use liftcheck::extensions::{CentralExtension, LiftWitness, PresentationStore};
use liftcheck::presentations::{coset_enumeration, pgroup_presentation};
use liftcheck::subext::{necessary_condition, subextension_exists};
use liftcheck::words::Word;

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Right Fox derivative ∂w/∂x_i as (word, coefficient) pairs.
#[pyfunction]
fn fox_derivative(word: &str, generator: usize) -> PyResult<Vec<(String, i64)>> {
    let w = Word::from_str(word).map_err(err)?;
    Ok(w.fox_derivative(generator)
        .terms()
        .map(|(term, coeff)| (term.to_string(), coeff))
        .collect())
}

/// Exponent sum μ_x(w) of one generator in a word.
#[pyfunction]
fn exponent_sum(word: &str, generator: usize) -> PyResult<i64> {
    Ok(Word::from_str(word).map_err(err)?.exponent_sum(generator))
}

/// A finite group resolved from a JSON spec (explicit permutations or a
/// catalog name).
#[pyclass]
struct Group {
    inner: ParsedGroup,
}

#[pymethods]
impl Group {
    #[staticmethod]
    fn from_spec(spec: &str) -> PyResult<Self> {
        let value: serde_json::Value = serde_json::from_str(spec).map_err(err)?;
        Ok(Group { inner: parse_group_spec(&value).map_err(err)? })
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.group.order()
    }

    #[getter]
    fn name(&self) -> String {
        self.inner.name.clone()
    }

    fn is_abelian(&self) -> bool {
        self.inner.group.is_abelian()
    }

    fn element_order(&self, element: usize) -> PyResult<usize> {
        if element >= self.inner.group.order() {
            return Err(PyValueError::new_err("element index out of range"));
        }
        Ok(self.inner.group.element_order(element))
    }

    /// p-group presentation with all relator exponent sums ≡ 0 mod p,
    /// returned as (generator count, relator strings).
    fn presentation(&self, p: u64) -> PyResult<(usize, Vec<String>)> {
        let (pres, _) = pgroup_presentation(&self.inner.group, p).map_err(err)?;
        Ok((pres.generator_count, pres.relators.iter().map(|r| r.to_string()).collect()))
    }

    /// Coset-enumeration order certificate of the p-group presentation.
    fn presentation_order_certificate(&self, p: u64) -> PyResult<usize> {
        let (pres, _) = pgroup_presentation(&self.inner.group, p).map_err(err)?;
        coset_enumeration(&pres, &[], 200_000).map_err(err)
    }
}

/// A central extension of a base group by F_p, from a JSON spec.
#[pyclass]
struct Extension {
    name: String,
    ext: Arc<CentralExtension>,
    base: ParsedGroup,
}

#[pymethods]
impl Extension {
    #[staticmethod]
    fn from_spec(spec: &str) -> PyResult<Self> {
        let value: serde_json::Value = serde_json::from_str(spec).map_err(err)?;
        let (name, ext) = parse_extension_spec(&value).map_err(err)?;
        let base = if value.get("catalog").is_some() {
            // Catalog extensions carry their own natural action.
            let q = value.get("q").and_then(serde_json::Value::as_u64);
            let action = q.map(liftcheck::catalog::psl2_action).transpose().map_err(err)?;
            ParsedGroup { name: name.clone(), group: Arc::clone(&ext.base), action }
        } else {
            parse_group_spec(value.get("group").expect("validated by parser")).map_err(err)?
        };
        Ok(Extension { name, ext: Arc::new(ext), base })
    }

    #[getter]
    fn name(&self) -> String {
        self.name.clone()
    }

    #[getter]
    fn order(&self) -> usize {
        self.ext.h.order()
    }

    #[getter]
    fn p(&self) -> u64 {
        self.ext.p
    }

    /// Whether the stabilizer of `point` under the group's natural action
    /// lifts to the extension.
    fn stabilizer_liftable(&self, point: usize) -> PyResult<bool> {
        let action = self
            .base
            .action
            .as_ref()
            .ok_or_else(|| PyValueError::new_err("group spec carries no action"))?;
        let stab = action.stabilizer(point).map_err(err)?;
        let store = PresentationStore::new(Arc::clone(&self.ext.base), self.ext.p);
        Ok(liftcheck::extensions::is_liftable(&self.ext, &store, &stab)
            .map_err(err)?
            .liftable)
    }

    /// Full liftability report for one point stabilizer, as a JSON string.
    fn liftability_report(&self, point: usize) -> PyResult<String> {
        let action = self
            .base
            .action
            .as_ref()
            .ok_or_else(|| PyValueError::new_err("group spec carries no action"))?;
        let stab = action.stabilizer(point).map_err(err)?;
        let store = PresentationStore::new(Arc::clone(&self.ext.base), self.ext.p);
        let report =
            liftcheck::extensions::is_liftable(&self.ext, &store, &stab).map_err(err)?;
        let witness = match &report.witness {
            LiftWitness::Splitting(sigma) => serde_json::json!({ "splitting": sigma }),
            LiftWitness::Obstruction { relator_index, value } => serde_json::json!({
                "obstruction": { "relator_index": relator_index, "value": value }
            }),
        };
        Ok(serde_json::json!({
            "subgroup_order": report.subgroup.order(),
            "liftable": report.liftable,
            "method_obstruction": report.method_obstruction,
            "method_coboundary": report.method_coboundary,
            "method_brute_force": report.method_brute_force,
            "obstructions": report.obstructions,
            "witness": witness,
        })
        .to_string())
    }

    /// Whether the extension embeds as a subextension of G ⋉ V for the
    /// group's natural permutation module.
    fn subextension_exists(&self) -> PyResult<bool> {
        let action = self
            .base
            .action
            .as_ref()
            .ok_or_else(|| PyValueError::new_err("group spec carries no action"))?;
        Ok(subextension_exists(&self.ext, action).map_err(err)?.is_some())
    }

    /// Whether every orbit-representative stabilizer of the natural action
    /// is liftable (the theorem's necessary condition).
    fn necessary_condition_holds(&self) -> PyResult<bool> {
        let action = self
            .base
            .action
            .as_ref()
            .ok_or_else(|| PyValueError::new_err("group spec carries no action"))?;
        let store = PresentationStore::new(Arc::clone(&self.ext.base), self.ext.p);
        Ok(necessary_condition(&self.ext, &store, action).map_err(err)?.holds)
    }
}

#[pymodule]
fn liftcheck_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(fox_derivative, m)?)?;
    m.add_function(wrap_pyfunction!(exponent_sum, m)?)?;
    m.add_class::<Group>()?;
    m.add_class::<Extension>()?;
    Ok(())
}
