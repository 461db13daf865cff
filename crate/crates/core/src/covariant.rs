//! Elements `sum_i f_i ⊗ v_i` of `k[V] ⊗ M` and the diagonal group action on them.

use std::fmt;

use crate::error::{Error, Result};
use crate::group::MatGroup;
use crate::module::GModule;
use crate::poly::{self, Poly};

/// A homogeneous element of `k[V]_d ⊗ M`, stored as its `m` polynomial components.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Covariant {
    pub degree: usize,
    pub components: Vec<Poly>,
}

impl Covariant {
    /// Checks that every nonzero component is homogeneous of degree `degree`.
    pub fn new(degree: usize, components: Vec<Poly>) -> Result<Self> {
        for (i, c) in components.iter().enumerate() {
            if !c.is_zero() && (!c.is_homogeneous() || c.degree() != Some(degree)) {
                return Err(Error::DimensionMismatch(format!(
                    "component {i} ({c}) is not homogeneous of degree {degree}"
                )));
            }
        }
        Ok(Covariant { degree, components })
    }

    /// `1 ⊗ v_i` in a module of dimension `m`.
    pub fn unit(g: &MatGroup, m: usize, i: usize) -> Self {
        let components = (0..m)
            .map(|k| {
                if k == i {
                    Poly::one(g.field(), g.dim())
                } else {
                    Poly::zero(g.field(), g.dim())
                }
            })
            .collect();
        Covariant {
            degree: 0,
            components,
        }
    }

    pub fn module_dim(&self) -> usize {
        self.components.len()
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Poly::is_zero)
    }

    pub fn add(&self, other: &Covariant) -> Covariant {
        assert_eq!(self.components.len(), other.components.len());
        Covariant {
            degree: self.degree,
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Multiplies every component by the homogeneous polynomial `f`.
    pub fn mul_poly(&self, f: &Poly) -> Covariant {
        Covariant {
            degree: self.degree + f.degree().unwrap_or(0),
            components: self.components.iter().map(|c| c * f).collect(),
        }
    }
}

impl fmt::Display for Covariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .components
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                if c.num_terms() > 1 {
                    format!("({c})⊗v{}", i + 1)
                } else {
                    format!("{c}⊗v{}", i + 1)
                }
            })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// `g(f ⊗ v) = g(f) ⊗ g(v)`, extended linearly.
pub fn act_covariant(
    group: &MatGroup,
    module: &GModule,
    element: usize,
    w: &Covariant,
) -> Result<Covariant> {
    module.check_group(group)?;
    if w.components.len() != module.dim() {
        return Err(Error::DimensionMismatch(format!(
            "covariant has {} components, module has dimension {}",
            w.components.len(),
            module.dim()
        )));
    }
    let moved = w
        .components
        .iter()
        .map(|f| poly::act(group, element, f))
        .collect::<Result<Vec<_>>>()?;
    let rho = module.action(element);
    let zero = Poly::zero(group.field(), group.dim());
    let components = (0..module.dim())
        .map(|k| {
            moved.iter().enumerate().fold(zero.clone(), |acc, (i, f)| {
                let c = rho.get(k, i);
                if c.is_zero() {
                    acc
                } else {
                    &acc + &f.scale(c)
                }
            })
        })
        .collect();
    Ok(Covariant {
        degree: w.degree,
        components,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::matrix::Matrix;

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

    fn p(g: &MatGroup, s: &str) -> Poly {
        Poly::parse(g.field(), g.dim(), s).unwrap()
    }

    #[test]
    fn sigma1_moves_x4() {
        let (g, _) = f2_order8_group();
        let s1 = g.generator_indices()[0];
        assert_eq!(poly::act(&g, s1, &p(&g, "x4")).unwrap(), p(&g, "x4 + x1"));
        for i in 1..=3 {
            let xi = p(&g, &format!("x{i}"));
            assert_eq!(poly::act(&g, s1, &xi).unwrap(), xi);
        }
        let dual = GModule::dual(&g);
        let w = Covariant::unit(&g, 4, 3);
        let moved = act_covariant(&g, &dual, s1, &w).unwrap();
        assert_eq!(
            moved,
            Covariant::unit(&g, 4, 3).add(&Covariant::unit(&g, 4, 0))
        );
    }

    #[test]
    fn sigma2_fixes_listed_covariant() {
        let (g, m1) = f2_order8_group();
        let s2 = g.generator_indices()[1];
        let z = Poly::zero(g.field(), 4);
        let w = Covariant::new(1, vec![z, p(&g, "x3"), p(&g, "x2")]).unwrap();
        assert_eq!(act_covariant(&g, &m1, s2, &w).unwrap(), w);
        assert_eq!(act_covariant(&g, &m1, 0, &w).unwrap(), w);
    }

    #[test]
    fn action_composes() {
        let (g, m1) = f2_order8_group();
        let z = Poly::zero(g.field(), 4);
        let w = Covariant::new(2, vec![p(&g, "x3*x4"), z, p(&g, "x4^2 + x1*x2")]).unwrap();
        for a in 0..g.order() {
            for b in 0..g.order() {
                let lhs =
                    act_covariant(&g, &m1, a, &act_covariant(&g, &m1, b, &w).unwrap()).unwrap();
                let rhs = act_covariant(&g, &m1, g.multiply_indices(a, b), &w).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn rejects_inhomogeneous_components() {
        let (g, _) = f2_order8_group();
        assert!(Covariant::new(1, vec![p(&g, "x1 + x2^2")]).is_err());
        assert_eq!(Covariant::unit(&g, 2, 1).to_string(), "1⊗v2");
    }
}
