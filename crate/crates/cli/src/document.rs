//! The JSON input document: a field, an ambient dimension and named bases.
//!
//! ```json
//! {
//!   "field": "complex",
//!   "ambient": 3,
//!   "subspaces": { "V": [[[1, 0], [0.5, -0.8660254037844386], [0, 0]]] },
//!   "options": { "rank_eps": 1e-10, "residual_eps": 1e-8, "degrees": true, "seed": 7 }
//! }
//! ```
//!
//! Complex entries are `[re, im]` pairs; plain numbers are accepted in either
//! field. A name followed by `^perp` refers to the orthogonal complement of
//! the named subspace.

use std::collections::BTreeMap;

use grassmann_core::scalar::Scalar;
use grassmann_core::subspace::complement;
use grassmann_core::{Field, Subspace, Tolerance};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

pub const PERP_SUFFIX: &str = "^perp";

/// A real number, or a complex one as `[re, im]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Real(f64),
    Complex([f64; 2]),
}

impl Entry {
    pub fn of<T: Scalar>(x: T) -> Self {
        match T::FIELD {
            Field::Real => Entry::Real(x.re()),
            Field::Complex => Entry::Complex([x.re(), x.im()]),
        }
    }

    fn parts(self) -> (f64, f64) {
        match self {
            Entry::Real(x) => (x, 0.0),
            Entry::Complex([re, im]) => (re, im),
        }
    }
}

pub fn entries<T: Scalar>(v: &[T]) -> Vec<Entry> {
    v.iter().map(|&x| Entry::of(x)).collect()
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank_eps: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residual_eps: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degrees: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    pub field: Field,
    pub ambient: usize,
    pub subspaces: BTreeMap<String, Vec<Vec<Entry>>>,
    #[serde(default)]
    pub options: Options,
}

impl InputDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: Self = serde_json::from_str(text)
            .map_err(|e| CliError::Input(format!("invalid document: {e}")))?;
        doc.validate()?;
        Ok(doc)
    }

    pub fn validate(&self) -> Result<()> {
        if self.ambient == 0 {
            return Err(CliError::Input(
                "ambient dimension must be at least 1".into(),
            ));
        }
        for (name, vectors) in &self.subspaces {
            if name.is_empty() || name.ends_with(PERP_SUFFIX) {
                return Err(CliError::Input(format!("invalid subspace name {name:?}")));
            }
            for (k, v) in vectors.iter().enumerate() {
                if v.len() != self.ambient {
                    return Err(CliError::Dimension(format!(
                        "vector {} of {name} has length {}, ambient dimension is {}",
                        k + 1,
                        v.len(),
                        self.ambient
                    )));
                }
                for e in v {
                    let (re, im) = e.parts();
                    if !re.is_finite() || !im.is_finite() {
                        return Err(CliError::Input(format!("non-finite entry in {name}")));
                    }
                    if self.field == Field::Real && matches!(e, Entry::Complex(_)) {
                        return Err(CliError::Input(format!(
                            "complex entry in {name} of a real document"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Document tolerances, with `residual_eps` optionally overridden.
    pub fn tolerance(&self, residual_eps: Option<f64>) -> Result<Tolerance> {
        let d = Tolerance::default();
        Tolerance::new(
            self.options.rank_eps.unwrap_or(d.rank_eps),
            residual_eps
                .or(self.options.residual_eps)
                .unwrap_or(d.residual_eps),
        )
        .map_err(CliError::from)
    }

    /// The basis stored under `name`, or an orthonormal basis of the
    /// complement for `name^perp`.
    pub fn basis<T: Scalar>(&self, name: &str, tol: &Tolerance) -> Result<Vec<Vec<T>>> {
        if let Some(base) = name.strip_suffix(PERP_SUFFIX) {
            return Ok(complement(&self.subspace::<T>(base, tol)?).basis());
        }
        let vectors = self
            .subspaces
            .get(name)
            .ok_or_else(|| CliError::UnknownName(name.to_string()))?;
        vectors
            .iter()
            .map(|v| {
                v.iter()
                    .map(|&e| {
                        let (re, im) = e.parts();
                        T::from_parts(re, im).ok_or_else(|| {
                            CliError::Input(format!(
                                "complex entry in {name} of a real computation"
                            ))
                        })
                    })
                    .collect()
            })
            .collect()
    }

    /// The subspace spanned by the basis under `name`; a dependent basis is
    /// an error.
    pub fn subspace<T: Scalar>(&self, name: &str, tol: &Tolerance) -> Result<Subspace<T>> {
        let basis = self.basis::<T>(name, tol)?;
        Subspace::from_independent(self.ambient, &basis, tol)
            .map_err(|e| annotate(CliError::from(e), name))
    }
}

fn annotate(e: CliError, name: &str) -> CliError {
    match e {
        CliError::Degenerate(m) => CliError::Degenerate(format!("{name}: {m}")),
        CliError::Dimension(m) => CliError::Dimension(format!("{name}: {m}")),
        other => other,
    }
}
