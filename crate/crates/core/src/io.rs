//! JSON file formats for lattices and divisor classes.
//!
//! ```json
//! {"labels": ["e", "f"], "gram": [["0", "1"], ["1", "0"]]}
//! {"coeffs": ["1", "-1/2"]}
//! ```
//!
//! Rationals are always strings in canonical form (see [`crate::rational`]),
//! so serializing a parsed file reproduces it byte for byte.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::lattice::{DivisorClass, Lattice, Result};
use crate::rational::{serde_rational_matrix, serde_rational_vec, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeFile {
    pub labels: Vec<String>,
    #[serde(with = "serde_rational_matrix")]
    pub gram: Vec<Vec<Rational>>,
}

impl LatticeFile {
    pub fn to_lattice(&self) -> Result<Lattice> {
        Lattice::from_gram(self.gram.clone(), self.labels.clone())
    }

    pub fn from_lattice(l: &Lattice) -> Self {
        LatticeFile {
            labels: l.labels().to_vec(),
            gram: l.gram().to_vec(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassFile {
    #[serde(with = "serde_rational_vec")]
    pub coeffs: Vec<Rational>,
}

impl ClassFile {
    pub fn to_class(&self, ambient: &Arc<Lattice>) -> Result<DivisorClass> {
        DivisorClass::new(ambient, self.coeffs.clone())
    }

    pub fn from_class(c: &DivisorClass) -> Self {
        ClassFile {
            coeffs: c.coeffs().to_vec(),
        }
    }
}

/// Input of the `exceptional` and `complement` commands.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassListFile {
    pub lattice: LatticeFile,
    pub classes: Vec<ClassFile>,
}

/// Input of the `zariski` command.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ZariskiFile {
    pub lattice: LatticeFile,
    pub primes: Vec<ClassFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
    pub class: ClassFile,
}
