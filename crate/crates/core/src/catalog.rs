//! Named example spaces. Every entry has `h = {0}`, the identity inner
//! product on m and `|v| = 0.5`.

use nalgebra::DMatrix;

use crate::algebra::{InvariantVector, ReductiveModel, StructureConstants};
use crate::error::{FinslerError, Result};

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub model: ReductiveModel,
    pub v: InvariantVector,
    pub notes: &'static str,
}

struct Recipe {
    name: &'static str,
    dim: usize,
    /// Zero-based `(i, j, k, c^k_ij)`.
    brackets: &'static [(usize, usize, usize, f64)],
    v: &'static [f64],
    notes: &'static str,
}

const RECIPES: &[Recipe] = &[
    Recipe {
        name: "abelian3",
        dim: 3,
        brackets: &[],
        v: &[0.5, 0.0, 0.0],
        notes: "R^3, all brackets zero; S and E vanish identically",
    },
    Recipe {
        name: "heisenberg3",
        dim: 3,
        brackets: &[(0, 1, 2, 1.0)],
        v: &[0.5, 0.0, 0.0],
        notes: "Heisenberg algebra [e1,e2] = e3 with v = 0.5 e1",
    },
    Recipe {
        name: "solvable2",
        dim: 2,
        brackets: &[(0, 1, 1, 1.0)],
        v: &[0.0, 0.5],
        notes: "non-abelian 2-dimensional algebra [e1,e2] = e2 with v = 0.5 e2",
    },
    Recipe {
        name: "su2_like",
        dim: 3,
        brackets: &[(0, 1, 2, 1.0), (1, 2, 0, 1.0), (2, 0, 1, 1.0)],
        v: &[0.5, 0.0, 0.0],
        notes: "cyclic brackets [e1,e2] = e3, [e2,e3] = e1, [e3,e1] = e2; bi-invariant product, S vanishes",
    },
    Recipe {
        name: "heisenberg_central_v",
        dim: 3,
        brackets: &[(0, 1, 2, 1.0)],
        v: &[0.0, 0.0, 0.5],
        notes: "Heisenberg algebra with central v = 0.5 e3; S vanishes",
    },
];

/// Names in catalog order.
pub fn names() -> Vec<&'static str> {
    RECIPES.iter().map(|r| r.name).collect()
}

/// Builds the named entry.
pub fn get(name: &str) -> Result<CatalogEntry> {
    let recipe = RECIPES
        .iter()
        .find(|r| r.name == name)
        .ok_or_else(|| FinslerError::UnknownEntry {
            name: name.to_string(),
            available: names().into_iter().map(String::from).collect(),
        })?;
    let sc = StructureConstants::from_triples(recipe.dim, recipe.brackets)?;
    let model = ReductiveModel::new(sc, 0, DMatrix::identity(recipe.dim, recipe.dim), recipe.v)?;
    let v = model.invariant_vector();
    Ok(CatalogEntry {
        name: recipe.name,
        model,
        v,
        notes: recipe.notes,
    })
}

/// Every entry, in catalog order.
pub fn all() -> Vec<CatalogEntry> {
    RECIPES
        .iter()
        .map(|r| get(r.name).expect("catalog recipes are valid"))
        .collect()
}
