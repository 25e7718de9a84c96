//! Named lattices: U, E8(-1), rank-one forms and the BBF lattices of the
//! K3^[n] and generalized Kummer deformation types.

use crate::lattice::{direct_sum, Lattice, LatticeError, Result};

/// Metadata for one catalog key.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CatalogEntry {
    pub key: &'static str,
    pub description: &'static str,
    /// Where the Gram matrix convention comes from.
    pub source: &'static str,
    pub param: Option<&'static str>,
    /// Entries used by the reproduction checks; the others are conveniences.
    pub anchored: bool,
}

pub const CATALOG: &[CatalogEntry] = &[
    CatalogEntry {
        key: "U",
        description: "hyperbolic plane [[0,1],[1,0]]",
        source: "standard even unimodular lattice of signature (1,1)",
        param: None,
        anchored: true,
    },
    CatalogEntry {
        key: "E8neg",
        description: "E8(-1), negative of the E8 Cartan matrix",
        source: "Bourbaki labelling of the E8 Dynkin diagram",
        param: None,
        anchored: true,
    },
    CatalogEntry {
        key: "rank1",
        description: "rank-one lattice <k>",
        source: "direct construction",
        param: Some("k (nonzero)"),
        anchored: true,
    },
    CatalogEntry {
        key: "K3",
        description: "K3 lattice U^3 + E8(-1)^2",
        source: "second cohomology of a K3 surface with cup product",
        param: None,
        anchored: true,
    },
    CatalogEntry {
        key: "K3n",
        description: "K3 + <-2(n-1)>, BBF lattice of K3^[n]-type",
        source: "Beauville 1983, BBF form of Hilbert schemes of K3 surfaces",
        param: Some("n (>= 2)"),
        anchored: true,
    },
    CatalogEntry {
        key: "Kumn",
        description: "U^3 + <-2(n+1)>, BBF lattice of generalized Kummer type",
        source: "Beauville 1983, BBF form of generalized Kummer varieties",
        param: Some("n (>= 1)"),
        anchored: false,
    },
];

pub fn hyperbolic_plane() -> Lattice {
    Lattice::from_int_gram(&[vec![0, 1], vec![1, 0]], &["e", "f"]).expect("valid U")
}

pub fn e8_negative() -> Lattice {
    // Bourbaki: 1-3-4-5-6-7-8 with 2 attached to 4.
    const EDGES: [(usize, usize); 7] = [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)];
    let mut g = vec![vec![0i64; 8]; 8];
    for (i, row) in g.iter_mut().enumerate() {
        row[i] = -2;
    }
    for (a, b) in EDGES {
        g[a][b] = 1;
        g[b][a] = 1;
    }
    let labels = ["a1", "a2", "a3", "a4", "a5", "a6", "a7", "a8"];
    Lattice::from_int_gram(&g, &labels).expect("valid E8(-1)")
}

pub fn rank_one(k: i64, label: &str) -> Lattice {
    Lattice::from_int_gram(&[vec![k]], &[label]).expect("valid rank-one lattice")
}

pub fn k3_lattice() -> Lattice {
    let u = hyperbolic_plane();
    let e8 = e8_negative();
    [&u, &u, &e8, &e8]
        .into_iter()
        .fold(u.clone(), |acc, l| direct_sum(&acc, l))
}

fn require(name: &str, param: Option<i64>) -> Result<i64> {
    param.ok_or_else(|| LatticeError::MissingParam(name.to_string()))
}

/// Look up a catalog lattice by key.
pub fn standard_lattice(name: &str, param: Option<i64>) -> Result<Lattice> {
    let invalid = |param, reason| LatticeError::InvalidParam {
        name: name.to_string(),
        param,
        reason,
    };
    match name {
        "U" => Ok(hyperbolic_plane()),
        "E8neg" => Ok(e8_negative()),
        "rank1" => {
            let k = require(name, param)?;
            if k == 0 {
                return Err(invalid(k, "k must be nonzero"));
            }
            Ok(rank_one(k, "v"))
        }
        "K3" => Ok(k3_lattice()),
        "K3n" => {
            let n = require(name, param)?;
            if n < 2 {
                return Err(invalid(n, "n must be at least 2"));
            }
            Ok(direct_sum(&k3_lattice(), &rank_one(-2 * (n - 1), "delta")))
        }
        "Kumn" => {
            let n = require(name, param)?;
            if n < 1 {
                return Err(invalid(n, "n must be at least 1"));
            }
            let u = hyperbolic_plane();
            let u3 = direct_sum(&direct_sum(&u, &u), &u);
            Ok(direct_sum(&u3, &rank_one(-2 * (n + 1), "delta")))
        }
        other => Err(LatticeError::UnknownName(other.to_string())),
    }
}
