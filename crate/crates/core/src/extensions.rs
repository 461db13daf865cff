//! Extensions `k[V]^G ⊂ k[V]^H` seen as modules of covariants of the permutation module
//! `k(G/H)`: freeness, `<H, W> = G`, degree-wise product spanning, and the converse direction.

use crate::covariant::Covariant;
use crate::covspace::{invariant_space, relative_transfer, TensorCoordinates};
use crate::error::{Error, Result};
use crate::freeness::{certify_basis, check_free, s_invariant, FreenessReport};
use crate::group::{membership, CosetSpace, MatGroup};
use crate::matrix::{Matrix, SparseEchelon};
use crate::module::GModule;
use crate::par;
use crate::poly::Poly;

/// The map `ψ` in one degree, in the canonical bases of both sides.
#[derive(Clone, Debug)]
pub struct PsiDegree {
    pub degree: usize,
    /// `dim k[V]^H_d`.
    pub h_dim: usize,
    /// `dim (k[V]_d ⊗ k(G/H))^G`.
    pub g_dim: usize,
    /// `g_dim x h_dim`; column `j` holds the coordinates of `ψ(f_j)`.
    pub matrix: Matrix,
    pub bijective: bool,
}

/// `ψ(f) = Tr^G_H(f ⊗ e_H) = sum_i r_i(f) ⊗ e_i` for degrees `0..=max_degree`.
pub fn psi_identification(
    g: &MatGroup,
    h_generators: &[Matrix],
    max_degree: usize,
) -> Result<Vec<PsiDegree>> {
    let cosets = g.cosets(h_generators)?;
    let perm = GModule::perm(g, &cosets);
    let trivial_h = GModule::trivial(&cosets.subgroup);
    par::map_range(0..max_degree + 1, |d| {
        psi_degree(g, &cosets, &perm, &trivial_h, d)
    })
    .into_iter()
    .collect()
}

fn psi_degree(
    g: &MatGroup,
    cosets: &CosetSpace,
    perm: &GModule,
    trivial_h: &GModule,
    d: usize,
) -> Result<PsiDegree> {
    let field = g.field();
    let h_space = invariant_space(&cosets.subgroup, trivial_h, d)?;
    let g_space = invariant_space(g, perm, d)?;
    let coords = TensorCoordinates::new(g.dim(), d, perm.dim());
    let pivots: Vec<usize> = g_space
        .vectors
        .iter()
        .map(|v| {
            v.iter()
                .position(|x| !x.is_zero())
                .expect("nonzero basis vector")
        })
        .collect();
    let mut cols = Vec::with_capacity(h_space.dim());
    for f in &h_space.basis {
        let mut comps = vec![Poly::zero(field, g.dim()); perm.dim()];
        comps[0] = f.components[0].clone();
        let lifted = Covariant {
            degree: d,
            components: comps,
        };
        let image = relative_transfer(g, perm, cosets, &lifted)?;
        let dense = crate::matrix::to_dense(field, coords.len(), &coords.coordinates(&image));
        // Coordinates in an echelon basis are the entries at its pivots.
        let c: Vec<_> = pivots.iter().map(|&p| dense[p].clone()).collect();
        let rebuilt = g_space
            .vectors
            .iter()
            .zip(&c)
            .fold(vec![field.zero(); coords.len()], |acc, (v, x)| {
                acc.iter().zip(v).map(|(a, b)| a + &(b * x)).collect()
            });
        if rebuilt != dense {
            return Err(Error::TheoremViolation(format!(
                "ψ image in degree {d} is not a G-covariant"
            )));
        }
        cols.push(c);
    }
    let matrix = Matrix::from_columns(field, g_space.dim(), &cols);
    let bijective = h_space.dim() == g_space.dim() && matrix.rank() == h_space.dim();
    Ok(PsiDegree {
        degree: d,
        h_dim: h_space.dim(),
        g_dim: g_space.dim(),
        matrix,
        bijective,
    })
}

/// Evidence that the `G`-level basis of `(k[V] ⊗ k(G/H))^G` is also a basis at level `K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisTransfer {
    pub s_k: usize,
    pub degree_sum: usize,
    pub certified: bool,
}

#[derive(Clone, Debug)]
pub struct SerreReport {
    pub freeness: FreenessReport,
    pub free: bool,
    pub hw_order: usize,
    pub hw_equals_g: bool,
    pub k_order: usize,
    pub k_cap_h_order: usize,
    pub degree_bound: usize,
    /// Entry `d`: products of `K`- and `H`-invariants span the `K ∩ H`-invariants of degree `d`.
    pub product_spanning: Vec<bool>,
    pub basis_transfer: Option<BasisTransfer>,
}

/// The groups involved in a Serre check, as parent element sets.
struct Setting {
    cosets: CosetSpace,
    k: MatGroup,
    k_in_g: Vec<usize>,
    k_cap_h: MatGroup,
}

fn setting(
    g: &MatGroup,
    h_generators: &[Matrix],
    k_generators: Option<&[Matrix]>,
) -> Result<Setting> {
    let cosets = g.cosets(h_generators)?;
    let reflections: Vec<usize> = g.find_reflections().iter().map(|r| r.element).collect();
    let (k, k_in_g) = match k_generators {
        Some(gens) => g.subgroup_from_matrices(gens)?,
        None => g.reflection_subgroup()?,
    };
    let in_k = membership(g.order(), &k_in_g);
    if !reflections.iter().all(|&r| in_k[r]) {
        return Err(Error::HypothesisFailed(
            "K does not contain the reflection subgroup".into(),
        ));
    }
    let common: Vec<usize> = cosets
        .subgroup_in_parent
        .iter()
        .copied()
        .filter(|&e| in_k[e])
        .collect();
    let (k_cap_h, _) = g.subgroup_from_elements(&common)?;
    Ok(Setting {
        cosets,
        k,
        k_in_g,
        k_cap_h,
    })
}

/// Degree-wise test of `k[V]^K k[V]^H = k[V]^{K ∩ H}` for degrees `0..=bound`.
pub fn product_spanning(
    k: &MatGroup,
    h: &MatGroup,
    k_cap_h: &MatGroup,
    bound: usize,
) -> Result<Vec<bool>> {
    let invariants = |grp: &MatGroup| -> Result<Vec<Vec<Poly>>> {
        let t = GModule::trivial(grp);
        par::map_range(0..bound + 1, |d| {
            invariant_space(grp, &t, d).map(|s| {
                s.basis
                    .into_iter()
                    .map(|w| w.components[0].clone())
                    .collect()
            })
        })
        .into_iter()
        .collect()
    };
    let (ki, hi) = (invariants(k)?, invariants(h)?);
    let target = GModule::trivial(k_cap_h);
    par::map_range(0..bound + 1, |d| {
        let full = invariant_space(k_cap_h, &target, d)?.dim();
        let coords = TensorCoordinates::new(k.dim(), d, 1);
        let mut span = SparseEchelon::new(k.field(), coords.len());
        'outer: for i in 0..=d {
            for u in &ki[i] {
                for v in &hi[d - i] {
                    let w = Covariant {
                        degree: d,
                        components: vec![u * v],
                    };
                    span.insert(&coords.coordinates(&w));
                    if span.rank() == full {
                        break 'outer;
                    }
                }
            }
        }
        Ok(span.rank() == full)
    })
    .into_iter()
    .collect()
}

/// Freeness of `k[V]^H` over `k[V]^G`, `<H, W> = G`, product spanning up to a degree bound
/// (default `2s + 2`), and re-certification of the basis at level `K` (default `K = W`).
pub fn serre_check(
    g: &MatGroup,
    h_generators: &[Matrix],
    k_generators: Option<&[Matrix]>,
    degree_bound: Option<usize>,
) -> Result<SerreReport> {
    let st = setting(g, h_generators, k_generators)?;
    let perm = GModule::perm(g, &st.cosets);
    let freeness = check_free(g, &perm)?;
    let free = freeness.is_free();
    let mut hw_gens: Vec<usize> = g.find_reflections().iter().map(|r| r.element).collect();
    hw_gens.extend(
        st.cosets
            .subgroup
            .generator_indices()
            .iter()
            .map(|&i| st.cosets.subgroup_in_parent[i]),
    );
    let hw_order = g.closure_indices(&hw_gens).len();
    let hw_equals_g = hw_order == g.order();
    if free && !hw_equals_g {
        return Err(Error::TheoremViolation(format!(
            "k[V]^H is free over k[V]^G but <H, W> has order {hw_order} < {}",
            g.order()
        )));
    }
    let degree_bound = degree_bound.unwrap_or(2 * freeness.s + 2);
    let product_spanning = product_spanning(&st.k, &st.cosets.subgroup, &st.k_cap_h, degree_bound)?;
    let basis_transfer = match &freeness.status {
        crate::freeness::FreenessStatus::Free { basis, degrees, .. } => {
            let perm_k = perm.restrict(&st.k_in_g);
            let s_k = s_invariant(&st.k, &perm_k)?;
            let certified = certify_basis(basis, perm.dim(), &s_k, &st.k)?.is_some();
            if !certified {
                return Err(Error::TheoremViolation(
                    "free basis does not re-certify at level K".into(),
                ));
            }
            Some(BasisTransfer {
                s_k: s_k.total,
                degree_sum: degrees.iter().sum(),
                certified,
            })
        }
        _ => None,
    };
    Ok(SerreReport {
        free,
        hw_order,
        hw_equals_g,
        k_order: st.k.order(),
        k_cap_h_order: st.k_cap_h.order(),
        degree_bound,
        product_spanning,
        basis_transfer,
        freeness,
    })
}

#[derive(Clone, Debug)]
pub struct ConverseReport {
    /// Freeness of `k[V]^{K ∩ H}` over `k[V]^K`.
    pub k_level: FreenessReport,
    /// Freeness of `k[V]^H` over `k[V]^G`.
    pub g_level: FreenessReport,
    pub degree_bound: usize,
    pub product_spanning: Vec<bool>,
    /// `K`-level freeness and spanning up to the bound both hold.
    pub hypotheses_hold: bool,
    /// Not (hypotheses hold and `G`-level freeness fails).
    pub consistent: bool,
}

/// Requires `G = KH`; compares freeness at level `K` plus product spanning with freeness at
/// level `G`.
pub fn serre_converse_check(
    g: &MatGroup,
    h_generators: &[Matrix],
    k_generators: Option<&[Matrix]>,
    degree_bound: Option<usize>,
) -> Result<ConverseReport> {
    let st = setting(g, h_generators, k_generators)?;
    let (k, h, kh) = (st.k.order(), st.cosets.subgroup.order(), st.k_cap_h.order());
    if k * h != kh * g.order() {
        return Err(Error::HypothesisFailed(format!(
            "G != KH: |K||H|/|K ∩ H| = {}, |G| = {}",
            k * h / kh,
            g.order()
        )));
    }
    let kcos = {
        let gens: Vec<Matrix> = st.k_cap_h.generators().to_vec();
        st.k.cosets(&gens)?
    };
    let k_level = check_free(&st.k, &GModule::perm(&st.k, &kcos))?;
    let g_level = check_free(g, &GModule::perm(g, &st.cosets))?;
    let degree_bound = degree_bound.unwrap_or(2 * k_level.s + 2);
    let product_spanning = product_spanning(&st.k, &st.cosets.subgroup, &st.k_cap_h, degree_bound)?;
    let hypotheses_hold = k_level.is_free() && product_spanning.iter().all(|&b| b);
    Ok(ConverseReport {
        consistent: !hypotheses_hold || g_level.is_free(),
        k_level,
        g_level,
        degree_bound,
        product_spanning,
        hypotheses_hold,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    fn s3() -> MatGroup {
        let f = FieldSpec::RATIONALS;
        MatGroup::generate(
            f,
            vec![
                Matrix::from_i64(f, &[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]),
                Matrix::from_i64(f, &[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]),
            ],
        )
        .unwrap()
    }

    fn a3_gen() -> Matrix {
        Matrix::from_i64(FieldSpec::RATIONALS, &[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]])
    }

    #[test]
    fn psi_is_bijective() {
        let g = s3();
        for degs in psi_identification(&g, &[a3_gen()], 4).unwrap() {
            assert!(degs.bijective, "degree {}", degs.degree);
        }
        let whole = psi_identification(&g, g.generators(), 3).unwrap();
        assert!(whole.iter().all(|p| p.bijective && p.matrix.is_identity()));
        let trivial = psi_identification(&g, &[Matrix::identity(g.field(), 3)], 2).unwrap();
        assert_eq!(
            trivial.iter().map(|p| p.h_dim).collect::<Vec<_>>(),
            vec![1, 3, 6]
        );
        assert!(trivial.iter().all(|p| p.bijective));
    }

    #[test]
    fn a3_in_s3() {
        let g = s3();
        let r = serre_check(&g, &[a3_gen()], None, Some(6)).unwrap();
        assert!(r.free && r.hw_equals_g);
        assert_eq!(r.product_spanning, vec![true; 7]);
        assert!(r.basis_transfer.unwrap().certified);
    }

    #[test]
    fn plus_minus_identity_over_trivial_subgroup() {
        let q = FieldSpec::RATIONALS;
        let g = MatGroup::generate(q, vec![Matrix::from_i64(q, &[&[-1, 0], &[0, -1]])]).unwrap();
        let r = serre_check(&g, &[Matrix::identity(q, 2)], None, None).unwrap();
        assert!(!r.free);
        assert!(!r.hw_equals_g);
    }

    #[test]
    fn converse_requires_g_equals_kh() {
        let g = s3();
        let r = serre_converse_check(&g, &[a3_gen()], Some(g.generators()), Some(4)).unwrap();
        assert!(r.k_level.is_free() && r.g_level.is_free() && r.consistent);
        let q = FieldSpec::RATIONALS;
        let ex = Matrix::from_i64(q, &[&[1, 0], &[0, -1]]);
        let g2 = MatGroup::generate(
            q,
            vec![Matrix::from_i64(q, &[&[-1, 0], &[0, 1]]), ex.clone()],
        )
        .unwrap();
        let gens = [ex];
        let bad = serre_converse_check(&g2, &gens, Some(&gens), None);
        assert!(matches!(bad, Err(Error::HypothesisFailed(_))));
    }
}
