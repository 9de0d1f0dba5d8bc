//! JSON report types. Every report is wrapped in an [`Envelope`] carrying
//! the schema version and a kind tag.

use serde::{Deserialize, Serialize};

use crate::adr::AdrModule;
use crate::basic::{BasicAlgebra, BasisElement};
use crate::presentation::Presentation;

pub const SCHEMA: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Envelope<T> {
    pub schema: u32,
    pub kind: String,
    pub body: T,
}

impl<T: Serialize> Envelope<T> {
    pub fn new(kind: &str, body: T) -> Self {
        Envelope { schema: SCHEMA, kind: kind.into(), body }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisReport {
    pub dim: usize,
    pub loewy_length: usize,
    pub rules: usize,
    pub basis: Vec<String>,
}

impl BasisReport {
    pub fn new(pres: &Presentation) -> Self {
        BasisReport {
            dim: pres.dim(),
            loewy_length: pres.loewy_length(),
            rules: pres.num_rules(),
            basis: pres.basis().iter().map(|p| pres.quiver().display_path(p)).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub label: String,
    pub dims: Vec<usize>,
    pub loewy_length: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratifyReport {
    pub catalog: Vec<CatalogEntry>,
    /// `layers[i][j - 1]` lists the labels of `F_{i,j}`.
    pub layers: Vec<Vec<Vec<String>>>,
    pub n: Vec<usize>,
    pub n_m: usize,
}

impl StratifyReport {
    pub fn new(adr: &AdrModule) -> Result<Self, crate::adr::AdrError> {
        let table = adr.stratify()?;
        let labels = adr.labels();
        Ok(StratifyReport {
            catalog: adr
                .catalog()
                .iter()
                .zip(&labels)
                .map(|(m, l)| CatalogEntry { label: l.clone(), dims: m.dims().to_vec(), loewy_length: m.loewy_length() })
                .collect(),
            layers: table
                .layers
                .iter()
                .map(|d| d.iter().map(|l| l.iter().map(|&i| labels[i].clone()).collect()).collect())
                .collect(),
            n: (0..table.layers.len()).map(|i| table.n(i)).collect(),
            n_m: table.n_m(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GldimReport {
    pub gldim: usize,
    pub n_m: usize,
    pub classical_bound: usize,
    /// Which bound equals `gldim`: `"n_M"`, `"classical"`, `"both"` or `"neither"`.
    pub tight: String,
}

impl GldimReport {
    pub fn new(gldim: usize, n_m: usize) -> Self {
        let classical_bound = 2 * n_m.saturating_sub(1);
        let tight = match (gldim == n_m, gldim == classical_bound) {
            (true, true) => "both",
            (true, false) => "n_M",
            (false, true) => "classical",
            (false, false) => "neither",
        };
        GldimReport { gldim, n_m, classical_bound, tight: tight.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MulEntry {
    pub a: usize,
    pub b: usize,
    pub product: Vec<(usize, u32)>,
}

/// Dump of a basic algebra: vertices, Hom dimensions, sparse multiplication.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraDump {
    pub prime: u32,
    pub labels: Vec<String>,
    pub dim: usize,
    /// `hom_dims[s][t] = dim e_t B e_s`.
    pub hom_dims: Vec<Vec<usize>>,
    pub elements: Vec<BasisElement>,
    pub multiplication: Vec<MulEntry>,
    pub radical_basis: Vec<usize>,
}

impl AlgebraDump {
    pub fn new(alg: &BasicAlgebra) -> Self {
        let n = alg.dim();
        let mut multiplication = Vec::new();
        for a in 0..n {
            for b in 0..n {
                let product = alg.mul(a, b);
                if !product.is_empty() {
                    multiplication.push(MulEntry { a, b, product: product.clone() });
                }
            }
        }
        AlgebraDump {
            prime: alg.prime().get(),
            labels: alg.labels().to_vec(),
            dim: n,
            hom_dims: alg.hom_dims(),
            elements: alg.elements().to_vec(),
            multiplication,
            radical_basis: alg.radical_basis(),
        }
    }

    /// Rebuilds the algebra; the inverse of [`AlgebraDump::new`].
    pub fn to_algebra(&self) -> Result<BasicAlgebra, crate::basic::BasicError> {
        let p = crate::linalg::Prime::new(u64::from(self.prime))
            .map_err(|e| crate::basic::BasicError::Malformed(e.to_string()))?;
        let mut table = vec![Vec::new(); self.dim * self.dim];
        for e in &self.multiplication {
            if e.a >= self.dim || e.b >= self.dim {
                return Err(crate::basic::BasicError::Malformed("product index out of range".into()));
            }
            table[e.a * self.dim + e.b] = e.product.clone();
        }
        BasicAlgebra::from_table(p, self.labels.clone(), self.elements.clone(), table)
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::linalg::Prime;
    use crate::presentation::{parse_presentation, DEFAULT_CAP};

    fn round_trip<T: Serialize + for<'de> Deserialize<'de> + PartialEq + std::fmt::Debug>(kind: &str, body: T) {
        let env = Envelope::new(kind, body);
        let text = env.to_json();
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(value["schema"], 1);
        let back: Envelope<T> = serde_json::from_str(&text).unwrap();
        assert_eq!(back, env);
    }

    #[test]
    fn reports_round_trip() {
        let a = Arc::new(
            parse_presentation(
                "quiver\nvertices: 1 2\narrow alpha: 1 -> 1\narrow beta: 1 -> 2\nrelations\nrel: alpha*beta\nrel: alpha*alpha*alpha\n",
                Prime::DEFAULT,
                DEFAULT_CAP,
            )
            .unwrap(),
        );
        round_trip("basis", BasisReport::new(&a));
        let adr = AdrModule::of_algebra(&a).unwrap();
        round_trip("stratify", StratifyReport::new(&adr).unwrap());
        round_trip("gldim", GldimReport::new(3, 4));
        let b = BasicAlgebra::from_modules(adr.catalog()).unwrap();
        let dump = AlgebraDump::new(&b);
        round_trip("algebra", dump.clone());
        let rebuilt = dump.to_algebra().unwrap();
        assert_eq!(rebuilt.table(), b.table());
        assert_eq!(rebuilt.global_dimension(16), b.global_dimension(16));
    }

    #[test]
    fn gldim_tightness() {
        assert_eq!(GldimReport::new(3, 4).tight, "neither");
        assert_eq!(GldimReport::new(2, 2).tight, "both");
        assert_eq!(GldimReport::new(0, 1).tight, "classical");
        assert_eq!(GldimReport::new(6, 4).tight, "classical");
    }
}
