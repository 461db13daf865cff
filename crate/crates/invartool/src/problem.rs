//! The JSON problem description and its validation against the engine types.

use std::collections::BTreeMap;

use covariant_core::group::DEFAULT_ORDER_CAP;
use covariant_core::{FieldSpec, GModule, MatGroup, Matrix, Scalar};
use serde::Deserialize;
use serde_json::Value;

use crate::error::CliError;

type MatrixSpec = Vec<Vec<Value>>;

#[derive(Clone, Debug, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum ModuleSpec {
    Trivial,
    Natural,
    Dual,
    Regular,
    Explicit {
        matrices: Vec<MatrixSpec>,
    },
    PermCosets {
        subgroup_generators: Vec<MatrixSpec>,
    },
}

impl ModuleSpec {
    pub fn kind(&self) -> &'static str {
        match self {
            ModuleSpec::Trivial => "trivial",
            ModuleSpec::Natural => "natural",
            ModuleSpec::Dual => "dual",
            ModuleSpec::Regular => "regular",
            ModuleSpec::Explicit { .. } => "explicit",
            ModuleSpec::PermCosets { .. } => "perm_cosets",
        }
    }
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Caps {
    pub order_cap: Option<usize>,
    pub hyperplane_cap: Option<usize>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    pub characteristic: u32,
    pub dimension: usize,
    pub generators: Vec<MatrixSpec>,
    #[serde(default)]
    pub module: Option<ModuleSpec>,
    /// Named alternatives, selected with `--module`.
    #[serde(default)]
    pub modules: BTreeMap<String, ModuleSpec>,
    #[serde(default)]
    pub subgroup_generators: Option<Vec<MatrixSpec>>,
    #[serde(default)]
    pub k_generators: Option<Vec<MatrixSpec>>,
    #[serde(default)]
    pub max_degree: Option<usize>,
    #[serde(default)]
    pub caps: Caps,
}

impl ProblemSpec {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))
    }
}

/// A validated problem: the enumerated group and the selected module.
pub struct Problem {
    pub spec: ProblemSpec,
    pub field: FieldSpec,
    pub group: MatGroup,
    pub module_name: String,
    pub module: GModule,
    pub subgroup_generators: Option<Vec<Matrix>>,
    pub k_generators: Option<Vec<Matrix>>,
}

fn scalar(field: FieldSpec, v: &Value) -> Result<Scalar, CliError> {
    match v {
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(field.from_i64(i)),
            None => Err(CliError::Parse(format!(
                "matrix entry {n} is not an integer"
            ))),
        },
        Value::String(s) => field
            .parse_scalar(s)
            .map_err(|e| CliError::Parse(e.to_string())),
        other => Err(CliError::Parse(format!(
            "matrix entry {other} is neither a number nor a string"
        ))),
    }
}

fn matrix(
    field: FieldSpec,
    size: usize,
    spec: &MatrixSpec,
    what: &str,
) -> Result<Matrix, CliError> {
    if spec.len() != size || spec.iter().any(|r| r.len() != size) {
        return Err(CliError::Validation(format!("{what} is not {size}x{size}")));
    }
    let rows = spec
        .iter()
        .map(|r| {
            r.iter()
                .map(|v| scalar(field, v))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Matrix::from_rows(field, rows)?)
}

fn matrices(
    field: FieldSpec,
    size: usize,
    specs: &[MatrixSpec],
    what: &str,
) -> Result<Vec<Matrix>, CliError> {
    specs
        .iter()
        .enumerate()
        .map(|(i, m)| matrix(field, size, m, &format!("{what} {}", i + 1)))
        .collect()
}

impl Problem {
    pub fn build(
        spec: ProblemSpec,
        module: Option<&str>,
        order_cap: Option<usize>,
    ) -> Result<Self, CliError> {
        let field =
            FieldSpec::new(spec.characteristic).map_err(|e| CliError::Validation(e.to_string()))?;
        if spec.dimension == 0 {
            return Err(CliError::Validation("dimension must be positive".into()));
        }
        let n = spec.dimension;
        let gens = matrices(field, n, &spec.generators, "generator")?;
        let cap = order_cap
            .or(spec.caps.order_cap)
            .unwrap_or(DEFAULT_ORDER_CAP);
        let group = MatGroup::generate_in_dim(field, n, gens, cap)?;
        let (module_name, module_spec) = select_module(&spec, module)?;
        let module = build_module(field, &group, &module_spec)?;
        let subgroup_generators = spec
            .subgroup_generators
            .as_deref()
            .map(|m| matrices(field, n, m, "subgroup generator"))
            .transpose()?;
        let k_generators = spec
            .k_generators
            .as_deref()
            .map(|m| matrices(field, n, m, "K generator"))
            .transpose()?;
        Ok(Problem {
            spec,
            field,
            group,
            module_name,
            module,
            subgroup_generators,
            k_generators,
        })
    }
}

fn select_module(spec: &ProblemSpec, name: Option<&str>) -> Result<(String, ModuleSpec), CliError> {
    let builtin = |n: &str| match n {
        "trivial" => Some(ModuleSpec::Trivial),
        "natural" => Some(ModuleSpec::Natural),
        "dual" => Some(ModuleSpec::Dual),
        "regular" => Some(ModuleSpec::Regular),
        _ => None,
    };
    match name {
        Some(n) => match spec.modules.get(n).cloned().or_else(|| builtin(n)) {
            Some(m) => Ok((n.to_string(), m)),
            None => Err(CliError::Validation(format!("unknown module {n:?}"))),
        },
        None => Ok(match &spec.module {
            Some(m) => (m.kind().to_string(), m.clone()),
            None => ("trivial".to_string(), ModuleSpec::Trivial),
        }),
    }
}

fn build_module(field: FieldSpec, g: &MatGroup, spec: &ModuleSpec) -> Result<GModule, CliError> {
    Ok(match spec {
        ModuleSpec::Trivial => GModule::trivial(g),
        ModuleSpec::Natural => GModule::natural(g),
        ModuleSpec::Dual => GModule::dual(g),
        ModuleSpec::Regular => GModule::regular(g),
        ModuleSpec::Explicit { matrices: ms } => {
            let m = ms.first().map_or(0, |r| r.len());
            if ms.len() != g.generators().len() {
                return Err(CliError::Validation(format!(
                    "explicit module has {} matrices for {} generators",
                    ms.len(),
                    g.generators().len()
                )));
            }
            GModule::explicit(g, matrices(field, m, ms, "module matrix")?)?
        }
        ModuleSpec::PermCosets {
            subgroup_generators,
        } => {
            let hs = matrices(
                field,
                g.dim(),
                subgroup_generators,
                "coset subgroup generator",
            )?;
            GModule::perm(g, &g.cosets(&hs)?)
        }
    })
}
