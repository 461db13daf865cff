//! Dispatch of one command on a validated problem. Each command returns its structured payload;
//! the same payload feeds both output formats.

use covariant_core::covspace::truncated_hilbert;
use covariant_core::extensions::{serre_check, serre_converse_check, SerreReport};
use covariant_core::freeness::{
    check_free_with, greedy_basis, linear_form_poly, s_invariant_with, FreenessOptions,
    GreedyResult, NotFreeWitness, SInvariantReport,
};
use covariant_core::series::{delta_degree, molien, series_invariants};
use covariant_core::{
    Covariant, FreenessReport, FreenessStatus, GModule, Matrix, ReflectionKind, Scalar,
};
use serde_json::{json, Value};

use crate::error::CliError;
use crate::problem::Problem;

pub const DEFAULT_SERIES_DEGREE: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    Analyze,
    SInvariant,
    Fm,
    CheckFree,
    Basis,
    Molien,
    Hilbert,
    Delta,
    Serre,
    SerreConverse,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Analyze => "analyze",
            Command::SInvariant => "s-invariant",
            Command::Fm => "fm",
            Command::CheckFree => "check-free",
            Command::Basis => "basis",
            Command::Molien => "molien",
            Command::Hilbert => "hilbert",
            Command::Delta => "delta",
            Command::Serre => "serre",
            Command::SerreConverse => "serre-converse",
        }
    }
}

pub struct Settings {
    pub max_degree: Option<usize>,
    pub hyperplane_cap: Option<usize>,
}

pub fn run(cmd: Command, p: &Problem, st: &Settings) -> Result<Value, CliError> {
    let opts = FreenessOptions {
        hyperplane_cap: st.hyperplane_cap,
    };
    let (g, m) = (&p.group, &p.module);
    Ok(match cmd {
        Command::Analyze => analyze(p)?,
        Command::SInvariant => s_report_json(&p.group, &s_invariant_with(g, m, opts)?),
        Command::Fm => {
            let r = s_invariant_with(g, m, opts)?;
            json!({ "s": r.total, "f_m": r.f_polynomial(g).to_string() })
        }
        Command::CheckFree => freeness_json(&check_free_with(g, m, opts)?, true),
        Command::Basis => {
            let cap = match st.max_degree {
                Some(d) => d,
                None => s_invariant_with(g, m, opts)?.total,
            };
            let mut v = greedy_json(&greedy_basis(g, m, cap)?);
            v.as_object_mut()
                .expect("object")
                .shift_insert(0, "degree_cap".into(), json!(cap));
            v
        }
        Command::Molien => molien_json(p, st.max_degree.unwrap_or(DEFAULT_SERIES_DEGREE))?,
        Command::Hilbert => {
            let d = st.max_degree.unwrap_or(DEFAULT_SERIES_DEGREE);
            json!({ "max_degree": d, "coefficients": truncated_hilbert(g, m, d)?.coefficients })
        }
        Command::Delta => delta_json(p)?,
        Command::Serre => {
            let h = subgroup(p)?;
            serre_json(&serre_check(
                g,
                h,
                p.k_generators.as_deref(),
                st.max_degree,
            )?)
        }
        Command::SerreConverse => {
            let h = subgroup(p)?;
            let r = serre_converse_check(g, h, p.k_generators.as_deref(), st.max_degree)?;
            json!({
                "k_level": freeness_json(&r.k_level, false),
                "g_level": freeness_json(&r.g_level, false),
                "degree_bound": r.degree_bound,
                "product_spanning": r.product_spanning,
                "hypotheses_hold": r.hypotheses_hold,
                "consistent": r.consistent,
            })
        }
    })
}

fn subgroup(p: &Problem) -> Result<&[Matrix], CliError> {
    p.subgroup_generators
        .as_deref()
        .ok_or_else(|| CliError::Validation("this command needs subgroup_generators".into()))
}

fn scalar_text(s: &Scalar) -> String {
    s.to_string()
}

fn form_text(p: &Problem, form: &[Scalar]) -> String {
    linear_form_poly(&p.group, form).to_string()
}

fn covariants(ws: &[Covariant]) -> Value {
    ws.iter().map(|w| json!(w.to_string())).collect()
}

fn analyze(p: &Problem) -> Result<Value, CliError> {
    let g = &p.group;
    let reflections = g.find_reflections();
    let transvections = reflections
        .iter()
        .filter(|r| r.kind == ReflectionKind::Transvection)
        .count();
    let hyperplanes = g.reflecting_hyperplanes()?;
    let (w, _) = g.reflection_subgroup()?;
    Ok(json!({
        "field": p.field.to_string(),
        "dimension": g.dim(),
        "order": g.order(),
        "abelian": g.is_abelian(),
        "reflections": reflections.len(),
        "transvections": transvections,
        "reflection_elements": reflections.iter().map(|r| json!({
            "matrix": g.element(r.element).to_string(),
            "kind": match r.kind {
                ReflectionKind::Transvection => "transvection",
                ReflectionKind::Diagonalizable => "diagonalizable",
            },
            "form": form_text(p, &r.linear_form),
        })).collect::<Vec<_>>(),
        "hyperplanes": hyperplanes.iter().map(|h| json!({
            "form": form_text(p, &h.linear_form),
            "stabilizer_order": h.stabilizer.order(),
            "a_u": h.a_u,
            "h_u": h.h_u,
        })).collect::<Vec<_>>(),
        "reflection_subgroup_order": w.order(),
        "generated_by_reflections": w.order() == g.order(),
    }))
}

fn s_report_json(g: &covariant_core::MatGroup, r: &SInvariantReport) -> Value {
    json!({
        "s": r.total,
        "f_m": r.f_polynomial(g).to_string(),
        "hyperplanes": r.per_hyperplane.iter().map(|h| json!({
            "form": linear_form_poly(g, &h.record.linear_form).to_string(),
            "stabilizer_order": h.record.stabilizer.order(),
            "s_u": h.s_u,
            "degrees": h.degrees,
            "basis": covariants(&h.basis),
        })).collect::<Vec<_>>(),
    })
}

fn greedy_json(r: &GreedyResult) -> Value {
    json!({
        "rank": r.rank,
        "degrees": r.degrees,
        "total_degree": r.total_degree,
        "basis": covariants(&r.chosen),
        "jacobian": r.jacobian.as_ref().map(|j| j.to_string()),
        "trace": r.trace.iter().map(|t| json!({
            "degree": t.degree,
            "candidates": t.candidates,
            "admitted": t.admitted,
        })).collect::<Vec<_>>(),
    })
}

fn freeness_json(r: &FreenessReport, detail: bool) -> Value {
    let mut v = json!({
        "s": r.s,
        "f_m": r.f_m.to_string(),
        "free": r.is_free(),
    });
    let obj = v.as_object_mut().expect("object");
    match &r.status {
        FreenessStatus::Free {
            basis,
            degrees,
            jacobian_scalar,
        } => {
            obj.insert("degrees".into(), json!(degrees));
            obj.insert("basis".into(), covariants(basis));
            obj.insert(
                "jacobian".into(),
                json!(r.greedy.jacobian.as_ref().map(|j| j.to_string())),
            );
            obj.insert(
                "jacobian_scalar".into(),
                json!(scalar_text(jacobian_scalar)),
            );
        }
        FreenessStatus::NotFree { witness } => {
            obj.insert(
                "witness".into(),
                match witness {
                    NotFreeWitness::ExcessDegree { total_degree } => {
                        json!({ "kind": "excess_degree", "total_degree": total_degree })
                    }
                    NotFreeWitness::RankDeficit { rank, degree } => {
                        json!({ "kind": "rank_deficit", "rank": rank, "degree": degree })
                    }
                },
            );
        }
    }
    if detail {
        obj.insert("greedy".into(), greedy_json(&r.greedy));
    }
    v
}

fn molien_json(p: &Problem, taylor: usize) -> Result<Value, CliError> {
    let g = &p.group;
    let series = molien(g, &p.module)?;
    let base = molien(g, &GModule::trivial(g))?;
    let si = series_invariants(&series, &base)?;
    let coeffs = series.taylor_at_zero(taylor + 1)?;
    Ok(json!({
        "series": series.to_string(),
        "invariant_ring": base.to_string(),
        "deg": si.deg.to_string(),
        "psi": si.psi.to_string(),
        "rank": si.rank.to_string(),
        "s": si.s.to_string(),
        "taylor": coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
    }))
}

fn delta_json(p: &Problem) -> Result<Value, CliError> {
    let delta = delta_degree(&p.group)?;
    let char_p = p.field.characteristic() as u64;
    let hs = p.group.reflecting_hyperplanes()?;
    Ok(json!({
        "delta": delta,
        "hyperplanes": hs.iter().map(|h| {
            let (a, hu) = (h.a_u.unwrap_or(0), h.h_u.unwrap_or(1));
            json!({
                "form": form_text(p, &h.linear_form),
                "a_u": a,
                "h_u": hu,
                "contribution": hu - 1 + (char_p - 1) * a as u64,
            })
        }).collect::<Vec<_>>(),
    }))
}

fn serre_json(r: &SerreReport) -> Value {
    json!({
        "freeness": freeness_json(&r.freeness, false),
        "free": r.free,
        "hw_order": r.hw_order,
        "hw_equals_g": r.hw_equals_g,
        "k_order": r.k_order,
        "k_cap_h_order": r.k_cap_h_order,
        "degree_bound": r.degree_bound,
        "product_spanning": r.product_spanning,
        "basis_transfer": r.basis_transfer.as_ref().map(|b| json!({
            "s_k": b.s_k,
            "degree_sum": b.degree_sum,
            "certified": b.certified,
        })),
    })
}
