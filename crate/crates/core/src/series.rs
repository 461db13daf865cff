//! Molien series in characteristic zero, the numerical invariants read off at `t = 1`, and the
//! degree of the Dedekind different over a prime field.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::group::MatGroup;
use crate::matrix::Matrix;
use crate::module::GModule;
use crate::par;
use crate::ratfun::{RationalFunction, UniPoly};

/// `deg`, `psi` of a numerator series and `rank`, `s` of its ratio to a base series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesInvariants {
    pub deg: BigRational,
    pub psi: BigRational,
    pub rank: BigRational,
    pub s: BigRational,
}

impl fmt::Display for SeriesInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "deg {} psi {} rank {} s {}",
            self.deg, self.psi, self.rank, self.s
        )
    }
}

fn scalar_to_rational(x: &crate::field::Scalar) -> BigRational {
    x.to_rational().cloned().expect("rational field")
}

/// Polynomial through `(xs[i], ys[i])` by Newton divided differences.
fn interpolate(xs: &[BigRational], ys: &[BigRational]) -> UniPoly {
    let n = xs.len();
    let mut coef = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            coef[i] = (&coef[i] - &coef[i - 1]) / (&xs[i] - &xs[i - j]);
        }
    }
    let mut out = UniPoly::zero();
    for i in (0..n).rev() {
        let factor = UniPoly::new(vec![-xs[i].clone(), BigRational::one()]);
        out = &(&out * &factor) + &UniPoly::constant(coef[i].clone());
    }
    out
}

/// `det(I - t A)` as a polynomial in `t`.
pub fn char_poly_reversed(a: &Matrix) -> UniPoly {
    let n = a.rows();
    let field = a.field();
    let xs: Vec<BigRational> = (0..=n as i64)
        .map(|k| BigRational::from_integer(BigInt::from(k)))
        .collect();
    let ys: Vec<BigRational> = (0..=n as i64)
        .map(|k| {
            let shifted = Matrix::identity(field, n).sub(&scale_matrix(a, k));
            scalar_to_rational(&shifted.det().expect("square"))
        })
        .collect();
    interpolate(&xs, &ys)
}

fn scale_matrix(a: &Matrix, k: i64) -> Matrix {
    let c = a.field().from_i64(k);
    let rows = a
        .to_rows()
        .into_iter()
        .map(|r| r.iter().map(|x| x * &c).collect())
        .collect();
    Matrix::from_rows(a.field(), rows).expect("same shape")
}

/// `(1/|G|) sum_σ tr ρ_M(σ) / det(I - t ρ_{V*}(σ))`, the Hilbert series of `(k[V] ⊗ M)^G`.
pub fn molien(g: &MatGroup, m: &GModule) -> Result<RationalFunction> {
    if !g.field().is_rational() {
        return Err(Error::ModularNotSupported(g.field().characteristic()));
    }
    m.check_group(g)?;
    // ρ_{V*}(σ) is the transpose of σ^{-1}, and transposing does not change det(I - tA).
    let terms = par::map_range(0..g.order(), |e| {
        let den = char_poly_reversed(g.element(g.inverse_index(e)));
        (den, scalar_to_rational(&m.trace(e)))
    });
    let mut grouped: HashMap<UniPoly, BigRational> = HashMap::new();
    let mut order: Vec<UniPoly> = Vec::new();
    for (den, tr) in terms {
        match grouped.get_mut(&den) {
            Some(acc) => *acc += tr,
            None => {
                order.push(den.clone());
                grouped.insert(den, tr);
            }
        }
    }
    let sum = order
        .into_iter()
        .fold(RationalFunction::zero(), |acc, den| {
            let tr = grouped[&den].clone();
            &acc + &RationalFunction::new(UniPoly::constant(tr), den)
        });
    let inv = BigRational::new(BigInt::one(), BigInt::from(g.order()));
    Ok(sum.scale(&inv))
}

/// Reads `deg`, `psi` from the Laurent expansion of `numerator` at `t = 1`, and `rank`, `s` from
/// `numerator / base = rank + s (t - 1) + O((t - 1)^2)`.
pub fn series_invariants(
    numerator: &RationalFunction,
    base: &RationalFunction,
) -> Result<SeriesInvariants> {
    let lau = numerator.laurent_at_one(1);
    let n = lau.pole_order as i64;
    let ratio = numerator.div(base)?;
    let r = ratio.laurent_at_one(1);
    if r.pole_order > 0 {
        return Err(Error::Pole(format!(
            "ratio {ratio} has a pole of order {} at t = 1",
            r.pole_order
        )));
    }
    // With u = 1 - t, the coefficient of (t - 1) is minus that of u.
    Ok(SeriesInvariants {
        deg: lau.coeff(-n),
        psi: lau.coeff(-n + 1),
        rank: r.coeff(0),
        s: -r.coeff(1),
    })
}

/// Leading and subleading Laurent coefficients of a single series at `t = 1`.
pub fn deg_psi(series: &RationalFunction) -> (BigRational, BigRational) {
    let lau = series.laurent_at_one(1);
    let n = lau.pole_order as i64;
    (lau.coeff(-n), lau.coeff(-n + 1))
}

/// Series invariants of `(k[V] ⊗ M)^G` over `k[V]^G` from Molien series.
pub fn molien_invariants(g: &MatGroup, m: &GModule) -> Result<SeriesInvariants> {
    series_invariants(&molien(g, m)?, &molien(g, &GModule::trivial(g))?)
}

/// `δ = sum_U (h_U - 1 + (p - 1) a_U)` over the reflecting hyperplanes.
pub fn delta_degree(g: &MatGroup) -> Result<u64> {
    let p = g.field().characteristic() as u64;
    if p == 0 {
        return Err(Error::NotPrimeField);
    }
    let mut total = 0;
    for h in g.reflecting_hyperplanes()? {
        let (a, hu) = (h.a_u.expect("prime field"), h.h_u.expect("prime field"));
        total += hu - 1 + (p - 1) * a as u64;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covspace::truncated_hilbert;
    use crate::field::FieldSpec;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

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

    #[test]
    fn interpolation_recovers_polynomial() {
        let p = UniPoly::from_i64(&[3, -1, 0, 2]);
        let xs: Vec<BigRational> = (0..4).map(q).collect();
        let ys: Vec<BigRational> = xs.iter().map(|x| p.eval(x)).collect();
        assert_eq!(interpolate(&xs, &ys), p);
    }

    #[test]
    fn molien_examples() {
        let f = FieldSpec::RATIONALS;
        let one = MatGroup::trivial(f, 1);
        assert_eq!(
            molien(&one, &GModule::trivial(&one)).unwrap().to_string(),
            "1/(1-t)"
        );
        let g = s3();
        let ms = molien(&g, &GModule::trivial(&g)).unwrap();
        assert_eq!(ms, RationalFunction::hilbert_product(&[1, 2, 3]));
        assert_eq!(ms.to_string(), "1/((1-t)(1-t^2)(1-t^3))");
        let z2 = MatGroup::generate(f, vec![Matrix::from_i64(f, &[&[-1]])]).unwrap();
        let sign = GModule::explicit(&z2, vec![Matrix::from_i64(f, &[&[-1]])]).unwrap();
        assert_eq!(molien(&z2, &sign).unwrap().to_string(), "t/(1-t^2)");
        let f2 = FieldSpec::new(2).unwrap();
        let t = MatGroup::trivial(f2, 1);
        assert_eq!(
            molien(&t, &GModule::trivial(&t)),
            Err(Error::ModularNotSupported(2))
        );
    }

    #[test]
    fn molien_matches_dimension_counts() {
        let g = s3();
        for m in [
            GModule::trivial(&g),
            GModule::dual(&g),
            GModule::regular(&g),
        ] {
            let series = molien(&g, &m).unwrap().taylor_at_zero(7).unwrap();
            let dims = truncated_hilbert(&g, &m, 6).unwrap().coefficients;
            let dims: Vec<BigRational> = dims.into_iter().map(|d| q(d as i64)).collect();
            assert_eq!(series, dims);
        }
    }

    #[test]
    fn series_invariant_examples() {
        let base = RationalFunction::hilbert_product(&[1, 1]);
        let si = series_invariants(&base, &base).unwrap();
        assert_eq!((si.rank, si.s, si.deg, si.psi), (q(1), q(0), q(1), q(0)));
        for e in 0..4 {
            let shifted = &RationalFunction::from_poly(UniPoly::monomial(e)) * &base;
            let si = series_invariants(&shifted, &base).unwrap();
            assert_eq!((si.rank, si.s), (q(1), q(e as i64)));
        }
        let num = RationalFunction::new(
            &UniPoly::one_minus_t_pow(2) * &UniPoly::one_minus_t_pow(3),
            UniPoly::one_minus_t_pow(1).pow(2),
        );
        let si = series_invariants(&num, &RationalFunction::one()).unwrap();
        assert_eq!((si.rank, si.s), (q(6), q(9)));
    }

    #[test]
    fn degree_psi_shift_law() {
        let base = RationalFunction::hilbert_product(&[2, 3]);
        let n = &RationalFunction::from_poly(UniPoly::from_i64(&[1, 0, 2, 1])) * &base;
        let si = series_invariants(&n, &base).unwrap();
        let (db, pb) = deg_psi(&base);
        assert_eq!(si.deg, &si.rank * &db);
        assert_eq!(si.psi, &si.rank * &pb - &si.s * &db);
    }

    #[test]
    fn delta() {
        let f2 = FieldSpec::new(2).unwrap();
        let gl = MatGroup::generate(
            f2,
            vec![
                Matrix::from_i64(f2, &[&[1, 1], &[0, 1]]),
                Matrix::from_i64(f2, &[&[0, 1], &[1, 0]]),
            ],
        )
        .unwrap();
        assert_eq!(delta_degree(&gl).unwrap(), 3);
        let f3 = FieldSpec::new(3).unwrap();
        let neg =
            MatGroup::generate(f3, vec![Matrix::from_i64(f3, &[&[-1, 0], &[0, -1]])]).unwrap();
        assert_eq!(delta_degree(&neg).unwrap(), 0);
        assert_eq!(delta_degree(&s3()), Err(Error::NotPrimeField));
    }
}
