//! Finite-dimensional representations `M` of an enumerated [`MatGroup`].

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::group::{CosetSpace, MatGroup};
use crate::matrix::Matrix;

/// A `kG`-module: one invertible `m x m` matrix per group element, indexed like the group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GModule {
    field: FieldSpec,
    dim: usize,
    action: Vec<Matrix>,
}

impl GModule {
    pub fn trivial(g: &MatGroup) -> Self {
        let one = Matrix::identity(g.field(), 1);
        GModule {
            field: g.field(),
            dim: 1,
            action: vec![one; g.order()],
        }
    }

    /// `V` itself.
    pub fn natural(g: &MatGroup) -> Self {
        GModule {
            field: g.field(),
            dim: g.dim(),
            action: g.elements().to_vec(),
        }
    }

    /// `V*` with `(σ x)(v) = x(σ^{-1} v)`, so `σ` acts by the transpose of its inverse.
    pub fn dual(g: &MatGroup) -> Self {
        GModule {
            field: g.field(),
            dim: g.dim(),
            action: (0..g.order())
                .map(|i| g.element(g.inverse_index(i)).transpose())
                .collect(),
        }
    }

    /// A module given by one matrix per group generator. The action is extended along the
    /// enumeration words and then checked against every generator edge.
    pub fn explicit(g: &MatGroup, generator_matrices: Vec<Matrix>) -> Result<Self> {
        if generator_matrices.len() != g.generators().len() {
            return Err(Error::InconsistentModule(format!(
                "{} matrices for {} generators",
                generator_matrices.len(),
                g.generators().len()
            )));
        }
        let dim = generator_matrices.first().map_or(1, Matrix::rows);
        for (i, m) in generator_matrices.iter().enumerate() {
            if m.field() != g.field() || m.rows() != dim || m.cols() != dim {
                return Err(Error::InconsistentModule(format!(
                    "matrix {i} is {}x{} over {}, expected {dim}x{dim} over {}",
                    m.rows(),
                    m.cols(),
                    m.field(),
                    g.field()
                )));
            }
            if m.det().is_none_or(|d| d.is_zero()) {
                return Err(Error::InconsistentModule(format!("matrix {i} is singular")));
            }
        }
        let action: Vec<Matrix> = (0..g.order())
            .map(|e| {
                g.word(e)
                    .iter()
                    .fold(Matrix::identity(g.field(), dim), |acc, &s| {
                        acc.mul(&generator_matrices[s])
                    })
            })
            .collect();
        for e in 0..g.order() {
            for (s, m) in generator_matrices.iter().enumerate() {
                let target = g.right_by_generator(e, s);
                if action[e].mul(m) != action[target] {
                    return Err(Error::InconsistentModule(format!(
                        "two words for element {target} give different matrices"
                    )));
                }
            }
        }
        Ok(GModule {
            field: g.field(),
            dim,
            action,
        })
    }

    /// The permutation module on left cosets: `σ e_i = e_j` where `σ r_i H = r_j H`.
    pub fn perm(g: &MatGroup, cosets: &CosetSpace) -> Self {
        let n = cosets.index();
        let action = (0..g.order())
            .map(|s| {
                let mut m = Matrix::zeros(g.field(), n, n);
                for (i, &r) in cosets.representatives.iter().enumerate() {
                    let j = cosets.coset_of[g.multiply_indices(s, r)];
                    m.set(j, i, g.field().one());
                }
                m
            })
            .collect();
        GModule {
            field: g.field(),
            dim: n,
            action,
        }
    }

    /// The regular representation `kG`, basis in element order.
    pub fn regular(g: &MatGroup) -> Self {
        let cosets = g.cosets_of(MatGroup::trivial(g.field(), g.dim()), vec![0]);
        Self::perm(g, &cosets)
    }

    /// Restriction to a subgroup given by the parent index of each of its elements.
    pub fn restrict(&self, sub_in_parent: &[usize]) -> GModule {
        GModule {
            field: self.field,
            dim: self.dim,
            action: sub_in_parent
                .iter()
                .map(|&i| self.action[i].clone())
                .collect(),
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of group elements this module is defined on.
    pub fn group_order(&self) -> usize {
        self.action.len()
    }

    pub fn action(&self, element: usize) -> &Matrix {
        &self.action[element]
    }

    pub fn matches(&self, g: &MatGroup) -> bool {
        self.field == g.field() && self.action.len() == g.order()
    }

    pub(crate) fn check_group(&self, g: &MatGroup) -> Result<()> {
        if self.matches(g) {
            Ok(())
        } else {
            Err(Error::DimensionMismatch(format!(
                "module over {} defined on {} elements, group over {} has order {}",
                self.field,
                self.action.len(),
                g.field(),
                g.order()
            )))
        }
    }

    /// True when every element in `elements` acts as the identity.
    pub fn acts_trivially_on(&self, elements: &[usize]) -> bool {
        elements.iter().all(|&e| self.action[e].is_identity())
    }

    pub fn trace(&self, element: usize) -> crate::field::Scalar {
        let m = &self.action[element];
        (0..self.dim).fold(self.field.zero(), |acc, i| &acc + m.get(i, i))
    }
}
