//! Mesh and chain file formats (JSON, one document per file).
//!
//! Mesh documents carry `dimension`, `vertices`, `top_simplices`, and
//! optionally `periods` (axis identification vectors), `corners`
//! (per-top-simplex covering-space coordinates for identified meshes that
//! are not global translation quotients) and `orientations`.
//!
//! Chain documents carry `degree` and `terms`: (sorted vertex tuple,
//! integer coefficient) pairs.

use std::path::Path;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::complex::{Chain, ComplexSpec, SimplicialComplex};
use crate::error::{Error, Result};

#[derive(Serialize, Deserialize)]
pub struct MeshFile {
    pub dimension: usize,
    pub vertices: Vec<Vec<f64>>,
    pub top_simplices: Vec<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub periods: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub corners: Option<Vec<Vec<Vec<f64>>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub orientations: Option<Vec<i8>>,
}

impl MeshFile {
    pub fn from_complex(k: &SimplicialComplex) -> Self {
        let top = k.simplices(k.dim()).to_vec();
        // periodic meshes reconstruct corners from the periods on load;
        // other identified meshes must ship them explicitly.
        let corners = if k.periods().is_some() {
            None
        } else {
            k.stored_corners().cloned()
        };
        MeshFile {
            dimension: k.dim(),
            vertices: k.vertices().to_vec(),
            top_simplices: top,
            periods: k.periods().map(|p| p.to_vec()),
            corners,
            orientations: Some(k.top_orientations().to_vec()),
        }
    }

    pub fn into_complex(self) -> Result<SimplicialComplex> {
        let k = SimplicialComplex::build(ComplexSpec {
            top_simplices: self.top_simplices,
            vertices: self.vertices,
            periods: self.periods,
            corners: self.corners,
            orientations: self.orientations,
        })?;
        if k.dim() != self.dimension {
            return Err(Error::Format(format!(
                "mesh file declares dimension {} but simplices have dimension {}",
                self.dimension,
                k.dim()
            )));
        }
        Ok(k)
    }
}

#[derive(Serialize, Deserialize)]
pub struct ChainFile {
    pub degree: usize,
    pub terms: Vec<(Vec<usize>, i64)>,
}

impl ChainFile {
    pub fn from_chain(k: &SimplicialComplex, c: &Chain) -> Result<Self> {
        let mut terms = Vec::new();
        for (i, coeff) in c.terms() {
            let v = coeff
                .to_i64()
                .ok_or_else(|| Error::Format("chain coefficient exceeds i64".into()))?;
            terms.push((k.simplex(c.degree, i).to_vec(), v));
        }
        Ok(ChainFile {
            degree: c.degree,
            terms,
        })
    }

    pub fn into_chain(self, k: &SimplicialComplex) -> Result<Chain> {
        if self.degree > k.dim() {
            return Err(Error::DegreeOutOfRange {
                degree: self.degree,
                dim: k.dim(),
            });
        }
        let terms: Vec<(Vec<usize>, BigInt)> = self
            .terms
            .into_iter()
            .map(|(t, c)| (t, BigInt::from(c)))
            .collect();
        k.chain_from_terms(self.degree, &terms)
    }
}

pub fn write_mesh(path: &Path, k: &SimplicialComplex) -> Result<()> {
    let doc = MeshFile::from_complex(k);
    let text = serde_json::to_string_pretty(&doc).map_err(|e| Error::Format(e.to_string()))?;
    std::fs::write(path, text)?;
    Ok(())
}

pub fn read_mesh(path: &Path) -> Result<SimplicialComplex> {
    let text = std::fs::read_to_string(path)?;
    let doc: MeshFile = serde_json::from_str(&text).map_err(|e| Error::Format(e.to_string()))?;
    doc.into_complex()
}

pub fn write_chain(path: &Path, k: &SimplicialComplex, c: &Chain) -> Result<()> {
    let doc = ChainFile::from_chain(k, c)?;
    let text = serde_json::to_string_pretty(&doc).map_err(|e| Error::Format(e.to_string()))?;
    std::fs::write(path, text)?;
    Ok(())
}

pub fn read_chain(path: &Path, k: &SimplicialComplex) -> Result<Chain> {
    let text = std::fs::read_to_string(path)?;
    let doc: ChainFile = serde_json::from_str(&text).map_err(|e| Error::Format(e.to_string()))?;
    doc.into_chain(k)
}
