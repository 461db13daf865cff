//! Jacobian determinants of covariants, the s-invariant as a sum over reflecting hyperplanes, the
//! polynomial `F_M`, and the freeness decision.
//!
//! An `m`-tuple of homogeneous covariants is a basis of the free module `(k[V] ⊗ M)^G` exactly
//! when its Jacobian is nonzero and its degrees add up to `s`. The greedy search scans each degree
//! in canonical order and keeps a candidate iff it raises the rank over `k(x1, ..., xn)`; for
//! `G`-invariant covariants this rank agrees with the rank over the invariant fraction field. The
//! result has the least total degree among independent `m`-tuples, so running it up to degree `s`
//! decides freeness.

use crate::covariant::Covariant;
use crate::covspace::invariant_space;
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::group::{HyperplaneRecord, MatGroup};
use crate::module::GModule;
use crate::par;
use crate::poly::Poly;
use crate::polymat::{self, IncrementalRank};

/// Candidates scanned and admitted at one degree of the greedy search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeTrace {
    pub degree: usize,
    pub candidates: usize,
    /// Positions of the admitted candidates in the canonical basis of this degree.
    pub admitted: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct GreedyResult {
    pub rank: usize,
    pub chosen: Vec<Covariant>,
    pub degrees: Vec<usize>,
    pub total_degree: usize,
    pub trace: Vec<DegreeTrace>,
    /// Jacobian of `chosen`, present once the rank is full.
    pub jacobian: Option<Poly>,
}

#[derive(Clone, Debug)]
pub struct HyperplaneS {
    pub record: HyperplaneRecord,
    pub s_u: usize,
    pub basis: Vec<Covariant>,
    pub degrees: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct SInvariantReport {
    pub total: usize,
    pub per_hyperplane: Vec<HyperplaneS>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NotFreeWitness {
    /// The greedy basis reached full rank with total degree above `s`.
    ExcessDegree { total_degree: usize },
    /// Rank still below `m` after every degree up to `s`.
    RankDeficit { rank: usize, degree: usize },
}

#[derive(Clone, Debug)]
pub enum FreenessStatus {
    Free {
        basis: Vec<Covariant>,
        degrees: Vec<usize>,
        /// `Jac(basis) = c * F_M`.
        jacobian_scalar: Scalar,
    },
    NotFree {
        witness: NotFreeWitness,
    },
}

#[derive(Clone, Debug)]
pub struct FreenessReport {
    pub status: FreenessStatus,
    pub s: usize,
    pub s_report: SInvariantReport,
    pub f_m: Poly,
    pub greedy: GreedyResult,
}

impl FreenessReport {
    pub fn is_free(&self) -> bool {
        matches!(self.status, FreenessStatus::Free { .. })
    }
}

/// Optional overrides for the hyperplane stage.
#[derive(Clone, Copy, Debug, Default)]
pub struct FreenessOptions {
    /// Degree cap for each point-stabilizer search; default `|G_U| * dim M`.
    pub hyperplane_cap: Option<usize>,
}

/// Determinant of the `m x m` matrix whose column `j` holds the components of `ws[j]`.
pub fn jacobian_det(ws: &[Covariant], m: usize) -> Result<Poly> {
    if ws.len() != m {
        return Err(Error::WrongCount {
            expected: m,
            got: ws.len(),
        });
    }
    if ws.iter().any(|w| w.components.len() != m) {
        return Err(Error::MixedModules);
    }
    let Some(first) = ws.first().and_then(|w| w.components.first()) else {
        return Err(Error::WrongCount {
            expected: m,
            got: 0,
        });
    };
    let (field, nvars) = (first.field(), first.nvars());
    if ws
        .iter()
        .flat_map(|w| &w.components)
        .any(|c| c.field() != field || c.nvars() != nvars)
    {
        return Err(Error::MixedModules);
    }
    let rows: Vec<Vec<Poly>> = (0..m)
        .map(|i| ws.iter().map(|w| w.components[i].clone()).collect())
        .collect();
    Ok(polymat::det(&rows, field, nvars))
}

/// Matroid greedy over the canonical invariant-space bases of degrees `0..=degree_cap`.
pub fn greedy_basis(g: &MatGroup, m: &GModule, degree_cap: usize) -> Result<GreedyResult> {
    m.check_group(g)?;
    let md = m.dim();
    let mut rank = IncrementalRank::new(md);
    let mut chosen = Vec::new();
    let mut degrees = Vec::new();
    let mut trace = Vec::new();
    for d in 0..=degree_cap {
        if rank.is_full() {
            break;
        }
        let space = invariant_space(g, m, d)?;
        let mut admitted = Vec::new();
        for (k, w) in space.basis.iter().enumerate() {
            if rank.try_insert(&w.components) {
                admitted.push(k);
                chosen.push(w.clone());
                degrees.push(d);
                if rank.is_full() {
                    break;
                }
            }
        }
        trace.push(DegreeTrace {
            degree: d,
            candidates: space.dim(),
            admitted,
        });
    }
    let jacobian = if rank.is_full() {
        Some(jacobian_det(&chosen, md)?)
    } else {
        None
    };
    Ok(GreedyResult {
        rank: rank.rank(),
        total_degree: degrees.iter().sum(),
        chosen,
        degrees,
        trace,
        jacobian,
    })
}

/// `f = c * d` for a nonzero constant `c`.
fn proportionality(f: &Poly, d: &Poly) -> Option<Scalar> {
    f.div_exact(d)?.as_constant().filter(|c| !c.is_zero())
}

pub fn linear_form_poly(g: &MatGroup, form: &[Scalar]) -> Poly {
    Poly::linear_form(g.field(), form)
}

/// `s_U` and a basis of the covariants of the point stabilizer, certified by
/// `Jac = c * x_U^{s_U}`.
pub fn hyperplane_s(
    g: &MatGroup,
    record: &HyperplaneRecord,
    m: &GModule,
    cap: Option<usize>,
) -> Result<HyperplaneS> {
    m.check_group(g)?;
    let sub = &record.stabilizer;
    let mres = m.restrict(&record.stabilizer_in_parent);
    let cap = cap.unwrap_or(sub.order() * m.dim());
    let greedy = greedy_basis(sub, &mres, cap)?;
    let Some(jac) = &greedy.jacobian else {
        return Err(Error::CapExceeded(cap));
    };
    let x_u = linear_form_poly(g, &record.linear_form);
    if proportionality(jac, &x_u.pow(greedy.total_degree)).is_none() {
        return Err(Error::TheoremViolation(format!(
            "point stabilizer Jacobian {jac} is not a power of {x_u}"
        )));
    }
    Ok(HyperplaneS {
        record: record.clone(),
        s_u: greedy.total_degree,
        basis: greedy.chosen,
        degrees: greedy.degrees,
    })
}

/// `s = sum_U s_U` over the reflecting hyperplanes.
pub fn s_invariant(g: &MatGroup, m: &GModule) -> Result<SInvariantReport> {
    s_invariant_with(g, m, FreenessOptions::default())
}

pub fn s_invariant_with(
    g: &MatGroup,
    m: &GModule,
    opts: FreenessOptions,
) -> Result<SInvariantReport> {
    m.check_group(g)?;
    let records = g.reflecting_hyperplanes()?;
    let per_hyperplane = par::try_map(&records, |r| hyperplane_s(g, r, m, opts.hyperplane_cap))?;
    let total = per_hyperplane.iter().map(|h| h.s_u).sum();
    let reflections: Vec<usize> = g.find_reflections().iter().map(|r| r.element).collect();
    if (total == 0) != m.acts_trivially_on(&reflections) {
        return Err(Error::TheoremViolation(format!(
            "s = {total} but reflections act {}trivially",
            if total == 0 { "non" } else { "" }
        )));
    }
    Ok(SInvariantReport {
        total,
        per_hyperplane,
    })
}

impl SInvariantReport {
    /// `F_M = prod_U x_U^{s_U}`.
    pub fn f_polynomial(&self, g: &MatGroup) -> Poly {
        self.per_hyperplane
            .iter()
            .fold(Poly::one(g.field(), g.dim()), |acc, h| {
                &acc * &linear_form_poly(g, &h.record.linear_form).pow(h.s_u)
            })
    }
}

pub fn f_polynomial(g: &MatGroup, m: &GModule) -> Result<Poly> {
    Ok(s_invariant(g, m)?.f_polynomial(g))
}

/// Decides whether `(k[V] ⊗ M)^G` is free over `k[V]^G`.
pub fn check_free(g: &MatGroup, m: &GModule) -> Result<FreenessReport> {
    check_free_with(g, m, FreenessOptions::default())
}

pub fn check_free_with(g: &MatGroup, m: &GModule, opts: FreenessOptions) -> Result<FreenessReport> {
    let s_report = s_invariant_with(g, m, opts)?;
    let s = s_report.total;
    let f_m = s_report.f_polynomial(g);
    let greedy = greedy_basis(g, m, s)?;
    let status = match &greedy.jacobian {
        None => FreenessStatus::NotFree {
            witness: NotFreeWitness::RankDeficit {
                rank: greedy.rank,
                degree: s,
            },
        },
        Some(_) if greedy.total_degree > s => FreenessStatus::NotFree {
            witness: NotFreeWitness::ExcessDegree {
                total_degree: greedy.total_degree,
            },
        },
        Some(jac) => {
            let c = proportionality(jac, &f_m).ok_or_else(|| {
                Error::TheoremViolation(format!(
                    "Jacobian {jac} of degree {} is not a multiple of F_M = {f_m}",
                    greedy.total_degree
                ))
            })?;
            FreenessStatus::Free {
                basis: greedy.chosen.clone(),
                degrees: greedy.degrees.clone(),
                jacobian_scalar: c,
            }
        }
    };
    Ok(FreenessReport {
        status,
        s,
        s_report,
        f_m,
        greedy,
    })
}

/// Applies the criterion to a given tuple: `Some(c)` with `Jac = c * F_M` when the tuple has
/// nonzero Jacobian and total degree `s`, i.e. when it is a free basis.
pub fn certify_basis(
    ws: &[Covariant],
    m_dim: usize,
    s_report: &SInvariantReport,
    g: &MatGroup,
) -> Result<Option<Scalar>> {
    let jac = jacobian_det(ws, m_dim)?;
    let total: usize = ws.iter().map(|w| w.degree).sum();
    if jac.is_zero() || total != s_report.total {
        return Ok(None);
    }
    Ok(proportionality(&jac, &s_report.f_polynomial(g)))
}
