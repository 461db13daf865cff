//! Graded pieces `(k[V]_d ⊗ M)^G`, transfers and truncated Hilbert series.
//!
//! Coordinates on `k[V]_d ⊗ M` are ordered monomial-major, module-minor: the coordinate of
//! `x^a ⊗ v_i` is `index(a) * m + i`, where monomials are listed largest first in graded
//! lexicographic order. Invariant spaces are returned as the reduced row echelon basis in these
//! coordinates, which fixes the scan order used by the greedy basis search.

use std::collections::HashMap;

use crate::covariant::{act_covariant, Covariant};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::group::{CosetSpace, MatGroup};
use crate::matrix::{Matrix, SparseEchelon, SparseVec};
use crate::module::GModule;
use crate::par;
use crate::poly::{self, Monomial, Poly};

/// Canonical basis of `(k[V]_d ⊗ M)^G`.
#[derive(Clone, Debug)]
pub struct InvariantSpaceBasis {
    pub degree: usize,
    pub module_dim: usize,
    pub monomials: Vec<Monomial>,
    pub vectors: Vec<Vec<Scalar>>,
    pub basis: Vec<Covariant>,
}

impl InvariantSpaceBasis {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// `dim (k[V]_i ⊗ M)^G` for `i = 0..=D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    pub coefficients: Vec<usize>,
}

/// Monomials of degree `d` in `n` variables, largest first.
pub fn monomials_of_degree(n: usize, d: usize) -> Vec<Monomial> {
    Monomial::all_of_degree(n, d)
}

/// Coordinates `index(a) * m + i` for the monomials of one degree.
#[derive(Clone, Debug)]
pub struct TensorCoordinates {
    pub monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    pub module_dim: usize,
}

impl TensorCoordinates {
    pub fn new(nvars: usize, degree: usize, module_dim: usize) -> Self {
        let monomials = monomials_of_degree(nvars, degree);
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        TensorCoordinates {
            monomials,
            index,
            module_dim,
        }
    }

    pub fn len(&self) -> usize {
        self.monomials.len() * self.module_dim
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn monomial_index(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Sparse coordinates of a covariant of this degree.
    pub fn coordinates(&self, w: &Covariant) -> SparseVec {
        let m = self.module_dim;
        let mut out: SparseVec = w
            .components
            .iter()
            .enumerate()
            .flat_map(|(i, f)| {
                f.terms()
                    .map(move |(mono, c)| (self.index[mono] * m + i, c.clone()))
            })
            .collect();
        out.sort_by_key(|(c, _)| *c);
        out
    }

    pub fn covariant(
        &self,
        field: crate::field::FieldSpec,
        nvars: usize,
        degree: usize,
        v: &[Scalar],
    ) -> Covariant {
        let m = self.module_dim;
        let components = (0..m)
            .map(|i| {
                self.monomials.iter().enumerate().fold(
                    Poly::zero(field, nvars),
                    |acc, (k, mono)| {
                        let c = &v[k * m + i];
                        if c.is_zero() {
                            acc
                        } else {
                            &acc + &Poly::term(field, mono.clone(), c.clone())
                        }
                    },
                )
            })
            .collect();
        Covariant { degree, components }
    }
}

/// Columns of `ρ_d(g)` on the monomial basis of degree `d`, as sparse vectors.
fn degree_action_columns(
    g: &MatGroup,
    element: usize,
    coords: &TensorCoordinates,
) -> Vec<SparseVec> {
    let field = g.field();
    coords
        .monomials
        .iter()
        .map(|mono| {
            let f = Poly::term(field, mono.clone(), field.one());
            let img = poly::act(g, element, &f).expect("matching group");
            let mut col: SparseVec = img
                .terms()
                .map(|(b, c)| (coords.index[b], c.clone()))
                .collect();
            col.sort_by_key(|(c, _)| *c);
            col
        })
        .collect()
}

/// The matrix of `g` on `k[V]_d`, in the graded lexicographic monomial basis.
pub fn degree_action_matrix(g: &MatGroup, element: usize, d: usize) -> Matrix {
    let coords = TensorCoordinates::new(g.dim(), d, 1);
    let n = coords.monomials.len();
    let mut out = Matrix::zeros(g.field(), n, n);
    for (a, col) in degree_action_columns(g, element, &coords)
        .into_iter()
        .enumerate()
    {
        for (b, c) in col {
            out.set(b, a, c);
        }
    }
    out
}

/// Canonical basis of `(k[V]_d ⊗ M)^G`, from the generators only.
pub fn invariant_space(g: &MatGroup, m: &GModule, d: usize) -> Result<InvariantSpaceBasis> {
    m.check_group(g)?;
    let field = g.field();
    let md = m.dim();
    let coords = TensorCoordinates::new(g.dim(), d, md);
    let len = coords.len();
    let mut eqs = SparseEchelon::new(field, len);
    for &s in g.generator_indices() {
        let cols = degree_action_columns(g, s, &coords);
        let rho = m.action(s);
        let mut rows: Vec<SparseVec> = vec![Vec::new(); len];
        for (a, col) in cols.iter().enumerate() {
            for i in 0..md {
                let c_idx = a * md + i;
                for (b, x) in col {
                    for k in 0..md {
                        let y = rho.get(k, i);
                        if !y.is_zero() {
                            rows[b * md + k].push((c_idx, x * y));
                        }
                    }
                }
            }
        }
        for (r, row) in rows.iter_mut().enumerate() {
            // Subtract the identity and merge duplicates.
            row.push((r, -&field.one()));
            row.sort_by_key(|(c, _)| *c);
            let mut merged: SparseVec = Vec::with_capacity(row.len());
            for (c, x) in row.drain(..) {
                match merged.last_mut() {
                    Some((lc, lx)) if *lc == c => *lx = &*lx + &x,
                    _ => merged.push((c, x)),
                }
            }
            merged.retain(|(_, x)| !x.is_zero());
            if !merged.is_empty() {
                eqs.insert(&merged);
            }
        }
    }
    let vectors = eqs.null_space();
    let basis = vectors
        .iter()
        .map(|v| coords.covariant(field, g.dim(), d, v))
        .collect();
    Ok(InvariantSpaceBasis {
        degree: d,
        module_dim: md,
        monomials: coords.monomials,
        vectors,
        basis,
    })
}

/// True when every generator fixes `w`.
pub fn is_invariant(g: &MatGroup, m: &GModule, w: &Covariant) -> Result<bool> {
    for &s in g.generator_indices() {
        if act_covariant(g, m, s, w)? != *w {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `sum_{σ in elements} σ(w)`.
pub fn transfer_over(
    g: &MatGroup,
    m: &GModule,
    elements: &[usize],
    w: &Covariant,
) -> Result<Covariant> {
    let mut acc = Covariant {
        degree: w.degree,
        components: vec![Poly::zero(g.field(), g.dim()); m.dim()],
    };
    for &e in elements {
        acc = acc.add(&act_covariant(g, m, e, w)?);
    }
    Ok(acc)
}

/// The full transfer `Tr^G(w) = sum_{σ in G} σ(w)`.
pub fn transfer(g: &MatGroup, m: &GModule, w: &Covariant) -> Result<Covariant> {
    let all: Vec<usize> = (0..g.order()).collect();
    transfer_over(g, m, &all, w)
}

/// The relative transfer `Tr^G_H(w) = sum_{r in G/H} r(w)` of an `H`-invariant `w`.
pub fn relative_transfer(
    g: &MatGroup,
    m: &GModule,
    cosets: &CosetSpace,
    w: &Covariant,
) -> Result<Covariant> {
    for &s in cosets.subgroup.generator_indices() {
        let parent = cosets.subgroup_in_parent[s];
        if act_covariant(g, m, parent, w)? != *w {
            return Err(Error::NotSubgroupInvariant);
        }
    }
    transfer_over(g, m, &cosets.representatives, w)
}

/// Graded dimensions of the covariants up to degree `max_degree`.
pub fn truncated_hilbert(g: &MatGroup, m: &GModule, max_degree: usize) -> Result<TruncatedSeries> {
    let dims = par::map_range(0..max_degree + 1, |d| {
        invariant_space(g, m, d).map(|b| b.dim())
    });
    Ok(TruncatedSeries {
        coefficients: dims.into_iter().collect::<Result<_>>()?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    fn f2_order8_group() -> (MatGroup, GModule) {
        let f = FieldSpec::new(2).unwrap();
        let s1 = Matrix::from_i64(
            f,
            &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[1, 0, 0, 1]],
        );
        let s2 = Matrix::from_i64(
            f,
            &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 1, 1, 0], &[0, 0, 0, 1]],
        );
        let s3 = Matrix::from_i64(
            f,
            &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[1, 1, 1, 0], &[1, 1, 0, 1]],
        );
        let g = MatGroup::generate(f, vec![s1, s2, s3]).unwrap();
        let m1 = GModule::explicit(
            &g,
            vec![
                Matrix::identity(f, 3),
                Matrix::from_i64(f, &[&[1, 0, 0], &[0, 1, 1], &[0, 0, 1]]),
                Matrix::from_i64(f, &[&[1, 0, 1], &[0, 1, 1], &[0, 0, 1]]),
            ],
        )
        .unwrap();
        (g, m1)
    }

    #[test]
    fn trivial_group_gives_everything() {
        let q = FieldSpec::RATIONALS;
        let g = MatGroup::trivial(q, 3);
        let m = GModule::natural(&g);
        for d in 0..4 {
            assert_eq!(
                invariant_space(&g, &m, d).unwrap().dim(),
                binom(3 + d - 1, d) * 3
            );
        }
    }

    #[test]
    fn h1_degree_zero() {
        let (g, m1) = f2_order8_group();
        let s1 = g.generator_indices()[0];
        let (h1, h1_in_g) = g.subgroup_generated_by(&[s1]).unwrap();
        let b = invariant_space(&h1, &m1.restrict(&h1_in_g), 0).unwrap();
        assert_eq!(b.dim(), 3);
        for (i, w) in b.basis.iter().enumerate() {
            assert_eq!(*w, Covariant::unit(&g, 3, i));
        }
    }

    #[test]
    fn swap_quadrics() {
        let q = FieldSpec::RATIONALS;
        let g = MatGroup::generate(q, vec![Matrix::from_i64(q, &[&[0, 1], &[1, 0]])]).unwrap();
        let b = invariant_space(&g, &GModule::trivial(&g), 2).unwrap();
        let shown: Vec<String> = b
            .basis
            .iter()
            .map(|w| w.components[0].to_string())
            .collect();
        assert_eq!(shown, ["x1^2 + x2^2", "x1*x2"]);
    }

    #[test]
    fn hilbert_truncations() {
        let (g, _) = f2_order8_group();
        assert_eq!(
            truncated_hilbert(&g, &GModule::trivial(&g), 1)
                .unwrap()
                .coefficients,
            vec![1, 2]
        );
        let f = FieldSpec::new(2).unwrap();
        let gl = MatGroup::generate(
            f,
            vec![
                Matrix::from_i64(f, &[&[1, 1], &[0, 1]]),
                Matrix::from_i64(f, &[&[0, 1], &[1, 0]]),
            ],
        )
        .unwrap();
        let dims = truncated_hilbert(&gl, &GModule::trivial(&gl), 6)
            .unwrap()
            .coefficients;
        assert_eq!(dims, vec![1, 0, 1, 1, 1, 1, 2]);
        assert_eq!(dims, brute_force_invariant_dims(&gl, 6));
        let one = MatGroup::trivial(FieldSpec::RATIONALS, 1);
        assert_eq!(
            truncated_hilbert(&one, &GModule::trivial(&one), 6)
                .unwrap()
                .coefficients,
            vec![1; 7]
        );
    }

    /// Counts invariant polynomials of each degree over `F_2` by trying every coefficient vector.
    fn brute_force_invariant_dims(g: &MatGroup, max: usize) -> Vec<usize> {
        let f = g.field();
        (0..=max)
            .map(|d| {
                let monos = monomials_of_degree(g.dim(), d);
                let fixed = (0u64..1 << monos.len())
                    .filter(|bits| {
                        let p = monos
                            .iter()
                            .enumerate()
                            .filter(|(i, _)| bits >> i & 1 == 1)
                            .fold(Poly::zero(f, g.dim()), |acc, (_, m)| {
                                &acc + &Poly::term(f, m.clone(), f.one())
                            });
                        (0..g.order()).all(|e| poly::act(g, e, &p).unwrap() == p)
                    })
                    .count();
                fixed.trailing_zeros() as usize
            })
            .collect()
    }

    #[test]
    fn basis_is_fixed_by_every_element() {
        let (g, m1) = f2_order8_group();
        for d in 0..4 {
            for w in invariant_space(&g, &m1, d).unwrap().basis {
                for e in 0..g.order() {
                    assert_eq!(act_covariant(&g, &m1, e, &w).unwrap(), w);
                }
            }
        }
    }

    #[test]
    fn transfers() {
        let q = FieldSpec::RATIONALS;
        let g = MatGroup::generate(q, vec![Matrix::from_i64(q, &[&[0, 1], &[1, 0]])]).unwrap();
        let t = GModule::trivial(&g);
        let x = Covariant::new(1, vec![Poly::var(q, 2, 0)]).unwrap();
        assert_eq!(
            transfer(&g, &t, &x).unwrap().components[0],
            Poly::parse(q, 2, "x1 + x2").unwrap()
        );
        // Reynolds is idempotent on invariants.
        let inv = invariant_space(&g, &t, 3).unwrap().basis[0].clone();
        let r = transfer(&g, &t, &inv).unwrap();
        let half = q.from_i64(2).inv().unwrap();
        assert_eq!(r.components[0].scale(&half), inv.components[0]);
        // |G| = p kills invariants in characteristic p.
        let f = FieldSpec::new(2).unwrap();
        let g2 = MatGroup::generate(f, vec![Matrix::from_i64(f, &[&[0, 1], &[1, 0]])]).unwrap();
        let t2 = GModule::trivial(&g2);
        let w = invariant_space(&g2, &t2, 2).unwrap().basis[0].clone();
        assert!(transfer(&g2, &t2, &w).unwrap().is_zero());
        let cos = g2.cosets(&[Matrix::identity(f, 2)]).unwrap();
        assert!(relative_transfer(&g2, &t2, &cos, &w).unwrap().is_zero());
        let cos_all = g2.cosets(g2.generators()).unwrap();
        let x2 = Covariant::new(1, vec![Poly::var(f, 2, 0)]).unwrap();
        assert_eq!(
            relative_transfer(&g2, &t2, &cos_all, &x2),
            Err(Error::NotSubgroupInvariant)
        );
    }
}
