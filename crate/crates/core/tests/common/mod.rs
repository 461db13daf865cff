#![allow(dead_code)]

use covariant_core::{Covariant, FieldSpec, GModule, MatGroup, Matrix, Poly};

pub struct Fixture {
    pub name: &'static str,
    pub group: MatGroup,
}

pub fn q() -> FieldSpec {
    FieldSpec::RATIONALS
}

pub fn fp(p: u32) -> FieldSpec {
    FieldSpec::new(p).unwrap()
}

pub fn mat(f: FieldSpec, rows: &[&[i64]]) -> Matrix {
    Matrix::from_i64(f, rows)
}

pub fn group(f: FieldSpec, gens: Vec<Matrix>) -> MatGroup {
    MatGroup::generate(f, gens).unwrap()
}

pub fn f2_order8_generators_list() -> Vec<Matrix> {
    let f = fp(2);
    vec![
        mat(
            f,
            &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[1, 0, 0, 1]],
        ),
        mat(
            f,
            &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 1, 1, 0], &[0, 0, 0, 1]],
        ),
        mat(
            f,
            &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[1, 1, 1, 0], &[1, 1, 0, 1]],
        ),
    ]
}

pub fn f2_order8_group() -> MatGroup {
    group(fp(2), f2_order8_generators_list())
}

/// The submodule spanned by `x1, x2, x3` of the dual module.
pub fn f2_order8_m1(g: &MatGroup) -> GModule {
    let f = fp(2);
    GModule::explicit(
        g,
        vec![
            Matrix::identity(f, 3),
            mat(f, &[&[1, 0, 0], &[0, 1, 1], &[0, 0, 1]]),
            mat(f, &[&[1, 0, 1], &[0, 1, 1], &[0, 0, 1]]),
        ],
    )
    .unwrap()
}

pub fn gl2f2() -> MatGroup {
    let f = fp(2);
    group(
        f,
        vec![mat(f, &[&[1, 1], &[0, 1]]), mat(f, &[&[0, 1], &[1, 0]])],
    )
}

pub fn s2() -> MatGroup {
    group(q(), vec![mat(q(), &[&[0, 1], &[1, 0]])])
}

pub fn s3_generators(f: FieldSpec) -> Vec<Matrix> {
    vec![
        mat(f, &[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]),
        mat(f, &[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]),
    ]
}

pub fn s3() -> MatGroup {
    group(q(), s3_generators(q()))
}

pub fn a3_generators() -> Vec<Matrix> {
    vec![s3_generators(q())[1].clone()]
}

pub fn klein() -> MatGroup {
    group(
        q(),
        vec![
            mat(q(), &[&[-1, 0], &[0, 1]]),
            mat(q(), &[&[1, 0], &[0, -1]]),
        ],
    )
}

pub fn plus_minus_identity() -> MatGroup {
    group(q(), vec![mat(q(), &[&[-1, 0], &[0, -1]])])
}

pub fn rotation() -> MatGroup {
    group(q(), vec![mat(q(), &[&[0, -1], &[1, 0]])])
}

/// Generated by one reflection and `-I` in dimension 3.
pub fn reflection_and_minus_identity() -> MatGroup {
    group(
        q(),
        vec![
            mat(q(), &[&[-1, 0, 0], &[0, 1, 0], &[0, 0, 1]]),
            mat(q(), &[&[-1, 0, 0], &[0, -1, 0], &[0, 0, -1]]),
        ],
    )
}

/// Generated by a transposition and `-I` in dimension 3.
pub fn transposition_and_minus_identity() -> MatGroup {
    group(
        q(),
        vec![
            mat(q(), &[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]),
            mat(q(), &[&[-1, 0, 0], &[0, -1, 0], &[0, 0, -1]]),
        ],
    )
}

pub fn s3_times_minus_identity() -> MatGroup {
    let mut gens = s3_generators(q());
    gens.push(mat(q(), &[&[-1, 0, 0], &[0, -1, 0], &[0, 0, -1]]));
    group(q(), gens)
}

pub fn transvection_and_minus_identity_f3() -> MatGroup {
    let f = fp(3);
    group(
        f,
        vec![mat(f, &[&[1, 1], &[0, 1]]), mat(f, &[&[-1, 0], &[0, -1]])],
    )
}

pub fn fixtures() -> Vec<Fixture> {
    let f2 = fp(2);
    let f3 = fp(3);
    vec![
        Fixture {
            name: "f2_order8",
            group: f2_order8_group(),
        },
        Fixture {
            name: "gl2f2",
            group: gl2f2(),
        },
        Fixture {
            name: "s2",
            group: s2(),
        },
        Fixture {
            name: "s3",
            group: s3(),
        },
        Fixture {
            name: "a3",
            group: group(q(), a3_generators()),
        },
        Fixture {
            name: "s3_plane",
            group: group(
                q(),
                vec![
                    mat(q(), &[&[0, 1], &[1, 0]]),
                    mat(q(), &[&[0, -1], &[1, -1]]),
                ],
            ),
        },
        Fixture {
            name: "klein",
            group: klein(),
        },
        Fixture {
            name: "d4",
            group: group(
                q(),
                vec![
                    mat(q(), &[&[0, 1], &[1, 0]]),
                    mat(q(), &[&[-1, 0], &[0, 1]]),
                ],
            ),
        },
        Fixture {
            name: "pm_identity",
            group: plus_minus_identity(),
        },
        Fixture {
            name: "rotation",
            group: rotation(),
        },
        Fixture {
            name: "refl_minus_i",
            group: reflection_and_minus_identity(),
        },
        Fixture {
            name: "transp_minus_i",
            group: transposition_and_minus_identity(),
        },
        Fixture {
            name: "s3_minus_i",
            group: s3_times_minus_identity(),
        },
        Fixture {
            name: "f2_transvection",
            group: group(f2, vec![mat(f2, &[&[1, 1], &[0, 1]])]),
        },
        Fixture {
            name: "f2_s3",
            group: group(f2, s3_generators(f2)),
        },
        Fixture {
            name: "f3_transvection_minus_i",
            group: transvection_and_minus_identity_f3(),
        },
        Fixture {
            name: "f3_reflection",
            group: group(f3, vec![mat(f3, &[&[-1, 0], &[0, 1]])]),
        },
    ]
}

/// The one-dimensional module on which each generator acts by its determinant.
pub fn det_character(g: &MatGroup) -> GModule {
    let f = g.field();
    let gens = g
        .generators()
        .iter()
        .map(|m| Matrix::from_rows(f, vec![vec![m.det().unwrap()]]).unwrap())
        .collect();
    GModule::explicit(g, gens).unwrap()
}

pub fn poly(g: &MatGroup, s: &str) -> Poly {
    Poly::parse(g.field(), g.dim(), s).unwrap()
}

pub fn cov(g: &MatGroup, d: usize, parts: &[&str]) -> Covariant {
    Covariant::new(d, parts.iter().map(|s| poly(g, s)).collect()).unwrap()
}

/// Laplace expansion along the first row.
pub fn laplace(rows: &[Vec<Poly>], field: FieldSpec, nvars: usize) -> Poly {
    if rows.is_empty() {
        return Poly::one(field, nvars);
    }
    let mut acc = Poly::zero(field, nvars);
    for c in 0..rows.len() {
        if rows[0][c].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Poly>> = rows[1..]
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(j, _)| *j != c)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let t = &rows[0][c] * &laplace(&minor, field, nvars);
        acc = if c % 2 == 0 { &acc + &t } else { &acc - &t };
    }
    acc
}

/// Whether `a = c * b` for some nonzero scalar `c`.
pub fn proportional(a: &Poly, b: &Poly) -> bool {
    if a.is_zero() || b.is_zero() {
        return false;
    }
    let (ma, ca) = a.leading_term().unwrap();
    let (mb, cb) = b.leading_term().unwrap();
    ma == mb && &b.scale(&ca.div(cb)) == a
}
