//! Finite matrix groups given by generators: enumeration, reflections, reflecting hyperplanes with
//! their point stabilizers, the reflection subgroup and left cosets.
//!
//! Elements are enumerated breadth-first from the identity. Each new layer is sorted by the
//! lexicographic order on matrix entries, so element indices are reproducible; index 0 is always
//! the identity.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::matrix::Matrix;

/// Default bound on the group order accepted by [`MatGroup::generate`].
pub const DEFAULT_ORDER_CAP: usize = 20_000;

#[derive(Clone, Debug)]
pub struct MatGroup {
    field: FieldSpec,
    dim: usize,
    generators: Vec<Matrix>,
    generator_indices: Vec<usize>,
    elements: Vec<Matrix>,
    words: Vec<Vec<usize>>,
    index: HashMap<Matrix, usize>,
    inverses: Vec<usize>,
    /// `right_gen[e][s]` is the index of `elements[e] * generators[s]`.
    right_gen: Vec<Vec<usize>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ReflectionKind {
    /// `(σ - I)^2 = 0`; only possible in positive characteristic.
    Transvection,
    Diagonalizable,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reflection {
    pub element: usize,
    pub kind: ReflectionKind,
    /// Linear form cutting out the fixed hyperplane, first nonzero coefficient 1.
    pub linear_form: Vec<Scalar>,
}

/// A reflecting hyperplane `U = ker x_U` and its point stabilizer `G_U`.
#[derive(Clone, Debug)]
pub struct HyperplaneRecord {
    pub linear_form: Vec<Scalar>,
    pub stabilizer: MatGroup,
    /// Parent index of each stabilizer element, in stabilizer order.
    pub stabilizer_in_parent: Vec<usize>,
    /// `|G_U| = p^a_u * h_u` over `F_p`; absent over `Q`.
    pub a_u: Option<u32>,
    pub h_u: Option<u64>,
}

/// Left cosets `gH` with minimal representatives.
#[derive(Clone, Debug)]
pub struct CosetSpace {
    pub subgroup: MatGroup,
    pub subgroup_in_parent: Vec<usize>,
    /// Parent index of the minimal element of each coset, increasing; coset 0 is `H`.
    pub representatives: Vec<usize>,
    /// Coset number of every parent element.
    pub coset_of: Vec<usize>,
}

impl MatGroup {
    /// Enumerates the group generated by `generators` with the default order cap.
    pub fn generate(field: FieldSpec, generators: Vec<Matrix>) -> Result<Self> {
        Self::generate_with_cap(field, generators, DEFAULT_ORDER_CAP)
    }

    pub fn generate_with_cap(
        field: FieldSpec,
        generators: Vec<Matrix>,
        cap: usize,
    ) -> Result<Self> {
        let dim = match generators.first() {
            Some(g) => g.rows(),
            None => {
                return Err(Error::DimensionMismatch(
                    "at least one generator is required".into(),
                ))
            }
        };
        Self::generate_in_dim(field, dim, generators, cap)
    }

    /// Like [`MatGroup::generate_with_cap`], but accepts an empty generator list.
    pub fn generate_in_dim(
        field: FieldSpec,
        dim: usize,
        generators: Vec<Matrix>,
        cap: usize,
    ) -> Result<Self> {
        for (i, g) in generators.iter().enumerate() {
            if g.field() != field || g.rows() != dim || g.cols() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "generator {i} is {}x{} over {}, expected {dim}x{dim} over {field}",
                    g.rows(),
                    g.cols(),
                    g.field()
                )));
            }
            if g.det().is_none_or(|d| d.is_zero()) {
                return Err(Error::NonInvertibleGenerator(i));
            }
        }
        let identity = Matrix::identity(field, dim);
        let mut elements = vec![identity.clone()];
        let mut words = vec![Vec::new()];
        let mut index = HashMap::from([(identity, 0usize)]);
        let mut layer = vec![0usize];
        while !layer.is_empty() {
            let mut fresh: Vec<(Matrix, Vec<usize>)> = Vec::new();
            let mut seen: HashMap<Matrix, ()> = HashMap::new();
            for &e in &layer {
                for (s, g) in generators.iter().enumerate() {
                    let prod = elements[e].mul(g);
                    if index.contains_key(&prod) || seen.contains_key(&prod) {
                        continue;
                    }
                    let mut w = words[e].clone();
                    w.push(s);
                    seen.insert(prod.clone(), ());
                    fresh.push((prod, w));
                }
            }
            fresh.sort_by(|a, b| a.0.cmp(&b.0));
            layer.clear();
            for (m, w) in fresh {
                if elements.len() >= cap {
                    return Err(Error::OrderCapExceeded(cap));
                }
                index.insert(m.clone(), elements.len());
                layer.push(elements.len());
                elements.push(m);
                words.push(w);
            }
        }
        let right_gen: Vec<Vec<usize>> = elements
            .iter()
            .map(|e| generators.iter().map(|g| index[&e.mul(g)]).collect())
            .collect();
        let inverses = elements
            .iter()
            .map(|e| index[&e.inverse().expect("group elements are invertible")])
            .collect();
        let generator_indices = generators.iter().map(|g| index[g]).collect();
        Ok(MatGroup {
            field,
            dim,
            generators,
            generator_indices,
            elements,
            words,
            index,
            inverses,
            right_gen,
        })
    }

    /// The trivial group on `k^dim`.
    pub fn trivial(field: FieldSpec, dim: usize) -> Self {
        Self::generate_in_dim(field, dim, Vec::new(), 1).expect("trivial group")
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Matrix] {
        &self.generators
    }

    pub fn generator_indices(&self) -> &[usize] {
        &self.generator_indices
    }

    pub fn elements(&self) -> &[Matrix] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Matrix {
        &self.elements[i]
    }

    /// Generator indices whose product, left to right, is element `i`.
    pub fn word(&self, i: usize) -> &[usize] {
        &self.words[i]
    }

    pub fn index_of(&self, m: &Matrix) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn inverse_index(&self, i: usize) -> usize {
        self.inverses[i]
    }

    /// Index of `elements[i] * generators[s]`.
    pub fn right_by_generator(&self, i: usize, s: usize) -> usize {
        self.right_gen[i][s]
    }

    pub fn multiply_indices(&self, a: usize, b: usize) -> usize {
        self.index[&self.elements[a].mul(&self.elements[b])]
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.generators;
        g.iter()
            .enumerate()
            .all(|(i, a)| g[i + 1..].iter().all(|b| a.mul(b) == b.mul(a)))
    }

    /// Closure of a set of element indices under multiplication.
    pub fn closure_indices(&self, gens: &[usize]) -> Vec<usize> {
        let mut member = vec![false; self.order()];
        member[0] = true;
        let mut out = vec![0];
        let mut k = 0;
        while k < out.len() {
            let e = out[k];
            k += 1;
            for &s in gens {
                let p = self.multiply_indices(e, s);
                if !member[p] {
                    member[p] = true;
                    out.push(p);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// The subgroup consisting of the given parent elements, which must be closed under
    /// multiplication. Generators are picked greedily in parent order. Returns the subgroup and
    /// the parent index of each of its elements.
    pub fn subgroup_from_elements(&self, members: &[usize]) -> Result<(MatGroup, Vec<usize>)> {
        let mut sorted = members.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let mut gens = Vec::new();
        let mut span = vec![0usize];
        for &e in &sorted {
            if span.binary_search(&e).is_ok() {
                continue;
            }
            gens.push(e);
            span = self.closure_indices(&gens);
        }
        if span != sorted {
            return Err(Error::Structure(
                "element set is not closed under multiplication".into(),
            ));
        }
        self.subgroup_generated_by(&gens)
    }

    /// The subgroup generated by parent elements `gens`.
    pub fn subgroup_generated_by(&self, gens: &[usize]) -> Result<(MatGroup, Vec<usize>)> {
        let mats = gens.iter().map(|&i| self.elements[i].clone()).collect();
        let sub = MatGroup::generate_in_dim(self.field, self.dim, mats, self.order() + 1)?;
        let map = sub.elements.iter().map(|m| self.index[m]).collect();
        Ok((sub, map))
    }

    /// The subgroup generated by matrices that must already be elements.
    pub fn subgroup_from_matrices(&self, gens: &[Matrix]) -> Result<(MatGroup, Vec<usize>)> {
        let idx = gens
            .iter()
            .map(|m| {
                self.index_of(m)
                    .ok_or_else(|| Error::NotASubgroupElement(m.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        self.subgroup_generated_by(&idx)
    }

    /// Every `σ != 1` with `rank(σ - I) = 1`, in element order.
    pub fn find_reflections(&self) -> Vec<Reflection> {
        self.elements
            .iter()
            .enumerate()
            .skip(1)
            .filter_map(|(i, m)| {
                let d = m.sub_identity();
                if d.rank() != 1 {
                    return None;
                }
                let kind = if d.mul(&d).is_zero() {
                    ReflectionKind::Transvection
                } else {
                    ReflectionKind::Diagonalizable
                };
                Some(Reflection {
                    element: i,
                    kind,
                    linear_form: displacement_form(&d),
                })
            })
            .collect()
    }

    /// The subgroup `W` generated by all reflections, checked to be normal.
    pub fn reflection_subgroup(&self) -> Result<(MatGroup, Vec<usize>)> {
        let refl: Vec<usize> = self.find_reflections().iter().map(|r| r.element).collect();
        let members = self.closure_indices(&refl);
        let in_w = membership(self.order(), &members);
        for &g in &self.generator_indices {
            let gi = self.inverses[g];
            for &w in &members {
                let c = self.multiply_indices(self.multiply_indices(g, w), gi);
                if !in_w[c] {
                    return Err(Error::TheoremViolation(
                        "reflection subgroup is not normal".into(),
                    ));
                }
            }
        }
        self.subgroup_generated_by(&refl)
    }

    /// One record per fixed hyperplane of a reflection, ordered by the linear form's coefficient
    /// vector read from the last variable to the first (so `x1 < x2 < x1 + x2`).
    pub fn reflecting_hyperplanes(&self) -> Result<Vec<HyperplaneRecord>> {
        let mut forms: Vec<Vec<Scalar>> = self
            .find_reflections()
            .into_iter()
            .map(|r| r.linear_form)
            .collect();
        forms.sort_by(|a, b| a.iter().rev().cmp(b.iter().rev()));
        forms.dedup();
        forms
            .into_iter()
            .map(|form| self.hyperplane_record(form))
            .collect()
    }

    fn hyperplane_record(&self, form: Vec<Scalar>) -> Result<HyperplaneRecord> {
        let row = Matrix::from_rows(self.field, vec![form.clone()])?;
        let basis = row.kernel();
        let members: Vec<usize> = (0..self.order())
            .filter(|&i| {
                let d = self.elements[i].sub_identity();
                basis
                    .iter()
                    .all(|u| d.mul_vec(u).iter().all(Scalar::is_zero))
            })
            .collect();
        let (stabilizer, stabilizer_in_parent) = self.subgroup_from_elements(&members)?;
        let (a_u, h_u) = match self.field.characteristic() {
            0 => (None, None),
            p => {
                let (a, h) = split_p_part(stabilizer.order() as u64, p as u64);
                if !(p as u64 - 1).is_multiple_of(h) {
                    return Err(Error::Structure(format!(
                        "stabilizer of order {} has p'-part {h} not dividing {}",
                        stabilizer.order(),
                        p - 1
                    )));
                }
                (Some(a), Some(h))
            }
        };
        Ok(HyperplaneRecord {
            linear_form: form,
            stabilizer,
            stabilizer_in_parent,
            a_u,
            h_u,
        })
    }

    /// Left cosets of the subgroup generated by `h_generators`.
    pub fn cosets(&self, h_generators: &[Matrix]) -> Result<CosetSpace> {
        let (subgroup, subgroup_in_parent) = self.subgroup_from_matrices(h_generators)?;
        Ok(self.cosets_of(subgroup, subgroup_in_parent))
    }

    pub fn cosets_of(&self, subgroup: MatGroup, subgroup_in_parent: Vec<usize>) -> CosetSpace {
        let mut coset_of = vec![usize::MAX; self.order()];
        let mut representatives = Vec::new();
        for g in 0..self.order() {
            if coset_of[g] != usize::MAX {
                continue;
            }
            let c = representatives.len();
            representatives.push(g);
            for &h in &subgroup_in_parent {
                coset_of[self.multiply_indices(g, h)] = c;
            }
        }
        CosetSpace {
            subgroup,
            subgroup_in_parent,
            representatives,
            coset_of,
        }
    }
}

impl CosetSpace {
    pub fn index(&self) -> usize {
        self.representatives.len()
    }
}

pub(crate) fn membership(order: usize, members: &[usize]) -> Vec<bool> {
    let mut m = vec![false; order];
    for &i in members {
        m[i] = true;
    }
    m
}

/// A nonzero row of a rank-one matrix, scaled so its first nonzero entry is 1.
fn displacement_form(d: &Matrix) -> Vec<Scalar> {
    let row = (0..d.rows())
        .map(|r| d.row(r))
        .find(|r| r.iter().any(|x| !x.is_zero()))
        .expect("rank one");
    normalize_form(row)
}

pub(crate) fn normalize_form(row: &[Scalar]) -> Vec<Scalar> {
    let lead = row.iter().find(|x| !x.is_zero()).expect("nonzero form");
    let inv = lead.inv().expect("nonzero");
    row.iter().map(|x| x * &inv).collect()
}

fn split_p_part(mut n: u64, p: u64) -> (u32, u64) {
    let mut a = 0;
    while n.is_multiple_of(p) {
        n /= p;
        a += 1;
    }
    (a, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn f2_order8() -> MatGroup {
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
        MatGroup::generate(f, vec![s1, s2, s3]).unwrap()
    }

    fn gl2f2() -> MatGroup {
        let f = FieldSpec::new(2).unwrap();
        MatGroup::generate(
            f,
            vec![
                Matrix::from_i64(f, &[&[1, 1], &[0, 1]]),
                Matrix::from_i64(f, &[&[0, 1], &[1, 0]]),
            ],
        )
        .unwrap()
    }

    fn s3() -> MatGroup {
        let q = FieldSpec::RATIONALS;
        MatGroup::generate(
            q,
            vec![
                Matrix::from_i64(q, &[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]),
                Matrix::from_i64(q, &[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]),
            ],
        )
        .unwrap()
    }

    fn closed(g: &MatGroup) -> bool {
        (0..g.order())
            .all(|a| (0..g.order()).all(|b| g.index_of(&g.element(a).mul(g.element(b))).is_some()))
    }

    #[test]
    fn orders() {
        let q = FieldSpec::RATIONALS;
        assert_eq!(
            MatGroup::generate(q, vec![Matrix::identity(q, 2)])
                .unwrap()
                .order(),
            1
        );
        let g = f2_order8();
        assert_eq!(g.order(), 8);
        assert!(g.is_abelian());
        assert!(closed(&g));
        assert_eq!(gl2f2().order(), 6);
        assert_eq!(s3().order(), 6);
        assert!(g.element(0).is_identity());
    }

    #[test]
    fn words_evaluate_to_elements() {
        let g = gl2f2();
        for i in 0..g.order() {
            let m = g
                .word(i)
                .iter()
                .fold(Matrix::identity(g.field(), 2), |acc, &s| {
                    acc.mul(&g.generators()[s])
                });
            assert_eq!(&m, g.element(i));
            assert!(g
                .element(i)
                .mul(g.element(g.inverse_index(i)))
                .is_identity());
        }
    }

    #[test]
    fn order_cap_and_bad_generators() {
        let f = FieldSpec::new(5).unwrap();
        let t = Matrix::from_i64(f, &[&[1, 1], &[0, 1]]);
        assert_eq!(
            MatGroup::generate_with_cap(f, vec![t], 3).unwrap_err(),
            Error::OrderCapExceeded(3)
        );
        let sing = Matrix::from_i64(f, &[&[1, 2], &[2, 4]]);
        assert_eq!(
            MatGroup::generate(f, vec![sing]).unwrap_err(),
            Error::NonInvertibleGenerator(0)
        );
    }

    #[test]
    fn reflections() {
        let q = FieldSpec::RATIONALS;
        let neg = MatGroup::generate(q, vec![Matrix::from_i64(q, &[&[-1, 0], &[0, -1]])]).unwrap();
        assert!(neg.find_reflections().is_empty());
        assert_eq!(neg.reflection_subgroup().unwrap().0.order(), 1);
        let d = MatGroup::generate(q, vec![Matrix::from_i64(q, &[&[-1, 0], &[0, 1]])]).unwrap();
        let r = d.find_reflections();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].kind, ReflectionKind::Diagonalizable);
        let g = f2_order8();
        let refl = g.find_reflections();
        for s in g.generator_indices() {
            assert!(refl
                .iter()
                .any(|r| r.element == *s && r.kind == ReflectionKind::Transvection));
        }
        assert_eq!(g.reflection_subgroup().unwrap().0.order(), 8);
        assert_eq!(s3().reflection_subgroup().unwrap().0.order(), 6);
    }

    #[test]
    fn hyperplanes() {
        let f = FieldSpec::new(2).unwrap();
        let g = f2_order8();
        let hs = g.reflecting_hyperplanes().unwrap();
        let forms: Vec<Vec<Scalar>> = hs.iter().map(|h| h.linear_form.clone()).collect();
        let v = |r: &[i64]| r.iter().map(|&x| f.from_i64(x)).collect::<Vec<_>>();
        assert_eq!(
            forms,
            vec![v(&[1, 0, 0, 0]), v(&[0, 1, 0, 0]), v(&[1, 1, 0, 0])]
        );
        for h in &hs {
            assert_eq!(h.stabilizer.order(), 2);
            assert_eq!((h.a_u, h.h_u), (Some(1), Some(1)));
        }
        let hs = gl2f2().reflecting_hyperplanes().unwrap();
        assert_eq!(hs.len(), 3);
        assert!(hs.iter().all(|h| h.a_u == Some(1) && h.h_u == Some(1)));
        assert!(MatGroup::trivial(f, 3)
            .reflecting_hyperplanes()
            .unwrap()
            .is_empty());
    }

    #[test]
    fn stabilizers_meet_trivially() {
        let hs = s3().reflecting_hyperplanes().unwrap();
        assert_eq!(hs.len(), 3);
        for (i, a) in hs.iter().enumerate() {
            for b in &hs[i + 1..] {
                let common = a
                    .stabilizer_in_parent
                    .iter()
                    .filter(|x| b.stabilizer_in_parent.contains(x))
                    .count();
                assert_eq!(common, 1);
            }
        }
    }

    #[test]
    fn cosets_of_a3() {
        let g = s3();
        let q = FieldSpec::RATIONALS;
        let c = g
            .cosets(&[Matrix::from_i64(q, &[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]])])
            .unwrap();
        assert_eq!(c.index(), 2);
        assert_eq!(c.representatives[0], 0);
        assert_eq!(c.subgroup.order(), 3);
        let bad = g.cosets(&[Matrix::from_i64(q, &[&[2, 0, 0], &[0, 1, 0], &[0, 0, 1]])]);
        assert!(matches!(bad, Err(Error::NotASubgroupElement(_))));
    }

    #[test]
    fn rejects_non_dividing_p_prime_part() {
        // Over F_3 the group generated by diag(-1, 1) has stabilizer order 2, which divides 2.
        let f = FieldSpec::new(3).unwrap();
        let g = MatGroup::generate(f, vec![Matrix::from_i64(f, &[&[-1, 0], &[0, 1]])]).unwrap();
        let hs = g.reflecting_hyperplanes().unwrap();
        assert_eq!((hs[0].a_u, hs[0].h_u), (Some(0), Some(2)));
    }
}
