use std::path::Path;
use std::sync::Arc;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use stabilitylab::fieldrank::{
    check_unit_conditions_with, field_report_with, multiplicative_independence_with, unit_inverse, FieldReport,
    Independence, NumberField, UnitCandidate, UnitConditions,
};
use stabilitylab::grouptrace::{
    hom_defect, induce_trace_with, induction_in_stages_check, is_trace, nearest_hom_distance, rational_combination_check,
    trace_stabilizer, unitarity_defect, unitary_near_identity, AlmostHom, CharacterTable, Decomposition, FiniteGroup,
    Subgroup, TraceCheck, TraceFn, Transversal,
};
use stabilitylab::polyclass::{classify_automorphism_with, SpectralClass};
use stabilitylab::shiftdyn::{periodization_experiment_in_box, Pattern, WindowShape, ConvergenceReport};
use stabilitylab::tordyn::{
    fixed_subgroup_with, orbit_decomposition, weakstar_report_with, FixedSubgroup, TorusPoint, WeakStarReport,
    WeakStarTarget,
};
use stabilitylab::verdict::{evaluate_with, GroupDescriptor, Verdict};
use stabilitylab::{Error, IntMatrix, IntPoly, Limits};

use crate::args::{Command, VerdictArgs};
use crate::CliError;

/// Largest group whose regular representation the `defect` command builds.
pub const DEFECT_ORDER_CAP: usize = 64;

/// Result of one subcommand. The structured form is
/// `{"command": ..., "result": ...}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "command", content = "result", rename_all = "snake_case")]
pub enum Output {
    Classify(SpectralClass),
    Periodic(PeriodicOutput),
    Weakstar(WeakStarReport),
    Bernoulli(BernoulliOutput),
    Induce(InduceOutput),
    Defect(DefectOutput),
    Field(FieldReport),
    Unitcheck(UnitcheckOutput),
    Verdict(VerdictOutput),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PeriodicOutput {
    pub matrix: IntMatrix,
    #[serde(flatten)]
    pub fixed: FixedSubgroup,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orbits: Option<Vec<Vec<TorusPoint>>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BernoulliOutput {
    pub dim: usize,
    pub alphabet: u32,
    pub extents: Vec<u64>,
    /// Seed of the random pattern; absent for pattern files.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub box_side: Option<u64>,
    pub report: ConvergenceReport,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TraceValue {
    pub element: String,
    pub re: f64,
    pub im: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InduceOutput {
    pub group_order: usize,
    pub subgroup: Vec<String>,
    pub stabilizer: Vec<String>,
    pub transversal: String,
    pub values: Vec<TraceValue>,
    pub check: TraceCheck,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stages_residual: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DefectOutput {
    pub group_order: usize,
    pub dim: usize,
    pub eps: f64,
    pub seed: u64,
    /// Defect of the unperturbed regular representation.
    pub regular_defect: f64,
    /// `max_{g,h} d_HS(f(gh), f(g) f(h))` of the perturbed map.
    pub defect: f64,
    pub unitarity_defect: f64,
    pub distance_to_regular: f64,
    /// Character decomposition of the regular representation.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub regular_decomposition: Option<Decomposition>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct UnitcheckOutput {
    pub field: IntPoly,
    pub unit: IntPoly,
    pub conditions: UnitConditions,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inverse: Option<IntPoly>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub other: Option<IntPoly>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub independence: Option<Independence>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerdictOutput {
    pub descriptor: GroupDescriptor,
    pub verdict: Verdict,
}

impl Output {
    pub fn to_structured(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("outputs serialize");
        s.push('\n');
        s
    }

    pub fn to_table(&self) -> String {
        match self {
            Output::Weakstar(r) => r.to_table(),
            Output::Bernoulli(b) => {
                let mut s = format!("# pattern d={} alphabet={} extents={:?}\n", b.dim, b.alphabet, b.extents);
                s.push_str(&b.report.to_table());
                s
            }
            Output::Induce(o) => {
                let mut s = String::new();
                s.push_str(&format!("group_order\t{}\n", o.group_order));
                s.push_str(&format!("subgroup\t{}\n", o.subgroup.join(" ")));
                s.push_str(&format!("stabilizer\t{}\n", o.stabilizer.join(" ")));
                s.push_str(&format!("transversal\t{}\n", o.transversal));
                s.push_str(&format!("is_trace\t{}\n", o.check.ok()));
                s.push_str(&format!("min_eigenvalue\t{}\n", o.check.min_eigenvalue));
                if let Some(r) = o.stages_residual {
                    s.push_str(&format!("stages_residual\t{r}\n"));
                }
                s.push_str("element\tre\tim\n");
                for v in &o.values {
                    s.push_str(&format!("{}\t{}\t{}\n", v.element, clean(v.re), clean(v.im)));
                }
                s
            }
            Output::Verdict(o) => {
                let v = &o.verdict;
                let mut s = format!("family\t{}\nstatus\t{}\n", v.family, json_scalar(&serde_json::to_value(v.status).unwrap()));
                s.push_str(&format!("citation\t{}\t{}\n", v.citation.id, v.citation.rule));
                for r in &v.related {
                    s.push_str(&format!("related\t{}\t{}\n", r.id, r.rule));
                }
                s.push_str(&format!("explanation\t{}\n", v.explanation));
                for c in &v.evidence {
                    let cert = json_scalar(&serde_json::to_value(c.certification).unwrap());
                    s.push_str(&format!("evidence\t{}\t{}\t{}\t{}\n", c.operation, c.condition, c.holds, cert));
                }
                s
            }
            other => {
                let v = serde_json::to_value(other).expect("outputs serialize");
                let mut s = String::new();
                flatten("", &v["result"], &mut s);
                s
            }
        }
    }
}

fn json_scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

/// `key\tvalue` lines with dotted keys for nested objects. Arrays of
/// scalars are joined with spaces; other arrays are printed as JSON.
fn flatten(prefix: &str, v: &Value, out: &mut String) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, x, out);
            }
        }
        Value::Array(items) if items.iter().all(|x| !x.is_array() && !x.is_object()) => {
            let parts: Vec<String> = items.iter().map(json_scalar).collect();
            out.push_str(&format!("{prefix}\t{}\n", parts.join(" ")));
        }
        other => out.push_str(&format!("{prefix}\t{}\n", json_scalar(other))),
    }
}

fn read_input(value: &str) -> Result<String, CliError> {
    std::fs::read_to_string(value).map_err(|e| CliError::Usage(format!("cannot read {value}: {e}")))
}

/// Inline `a,b;c,d` (or a single row `a,b`), otherwise a file path.
fn matrix_arg(value: &str) -> Result<IntMatrix, CliError> {
    if Path::new(value).is_file() {
        return Ok(read_input(value)?.parse()?);
    }
    Ok(value.parse()?)
}

fn poly_arg(value: &str) -> Result<IntPoly, CliError> {
    Ok(value.parse()?)
}

fn group_arg(value: &str, limits: &Limits) -> Result<Arc<FiniteGroup>, CliError> {
    let g = if Path::new(value).is_file() {
        let g: FiniteGroup = read_input(value)?.parse()?;
        if g.order() > limits.group_order {
            return Err(Error::Capacity(format!("group of order {} exceeds the cap {}", g.order(), limits.group_order)).into());
        }
        g
    } else {
        FiniteGroup::preset_with(value, limits)?
    };
    Ok(Arc::new(g))
}

/// Splits on commas outside parentheses, so product labels like `(a, b)`
/// survive.
fn split_labels(text: &str) -> Vec<String> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in text.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(std::mem::take(&mut cur).trim().to_string());
                continue;
            }
            _ => {}
        }
        cur.push(ch);
    }
    parts.push(cur.trim().to_string());
    parts.into_iter().filter(|p| !p.is_empty()).collect()
}

fn subgroup_arg(group: &Arc<FiniteGroup>, gens: &str) -> Result<Subgroup, CliError> {
    let idx = split_labels(gens).iter().map(|t| group.find(t)).collect::<Result<Vec<_>, _>>()?;
    Ok(Subgroup::generated(group.clone(), &idx)?)
}

fn transversal_arg(value: &str) -> Result<Transversal, CliError> {
    match value {
        "canonical" => Ok(Transversal::Canonical),
        _ => value
            .strip_prefix("seeded:")
            .and_then(|s| s.parse().ok())
            .map(Transversal::Seeded)
            .ok_or_else(|| CliError::Usage(format!("bad transversal {value:?}; use canonical or seeded:<n>"))),
    }
}

fn labels(group: &FiniteGroup, elems: &[usize]) -> Vec<String> {
    elems.iter().map(|&x| group.label(x).to_string()).collect()
}

pub fn dispatch(cmd: &Command, limits: &Limits) -> Result<Output, CliError> {
    Ok(match cmd {
        Command::Classify { matrix } => Output::Classify(classify_automorphism_with(&matrix_arg(matrix)?, limits)?),
        Command::Periodic { matrix, n, enumerate, orbits } => {
            let a = matrix_arg(matrix)?;
            let fixed = fixed_subgroup_with(&a, *n, *enumerate || *orbits, limits)?;
            let orbits = if *orbits { Some(orbit_decomposition(&a, &fixed)?) } else { None };
            Output::Periodic(PeriodicOutput { matrix: a, fixed, orbits })
        }
        Command::Weakstar { matrix, n_min, n_max, freq_box, target } => {
            let a = matrix_arg(matrix)?;
            let target = if target == "haar" {
                WeakStarTarget::Haar
            } else {
                WeakStarTarget::Measure(read_input(target)?.parse()?)
            };
            Output::Weakstar(weakstar_report_with(&a, &target, *n_min, *n_max, *freq_box, limits)?)
        }
        Command::Bernoulli { pattern, alphabet, extent, seed, period, window, box_side } => {
            let (x, seed) = match pattern {
                Some(p) => (read_input(&p.to_string_lossy())?.parse::<Pattern>()?, None),
                None => (Pattern::random(*alphabet, shape(extent)?, *seed)?, Some(*seed)),
            };
            let windows = window.iter().map(|w| shape(w).map(WindowShape)).collect::<Result<Vec<_>, _>>()?;
            let report = periodization_experiment_in_box(&x, period, &windows, *box_side, limits)?;
            Output::Bernoulli(BernoulliOutput {
                dim: x.extents().len(),
                alphabet: stabilitylab::shiftdyn::Configuration::alphabet(&x),
                extents: x.extents().to_vec(),
                seed,
                box_side: *box_side,
                report,
            })
        }
        Command::Induce { group, subgroup, trace, middle, transversal } => {
            induce(group, subgroup.as_deref(), trace, middle.as_deref(), transversal, limits)?
        }
        Command::Defect { group, eps, seed, characters } => defect(group, *eps, *seed, characters.as_deref(), limits)?,
        Command::Field { field } => Output::Field(field_report_with(&poly_arg(field)?, limits)?),
        Command::Unitcheck { field, unit, other } => {
            let f = NumberField::new_with(poly_arg(field)?, limits)?;
            let u = poly_arg(unit)?;
            let conditions = check_unit_conditions_with(&f, &u, limits)?;
            let inverse = if conditions.is_unit {
                Some(unit_inverse(&f, &UnitCandidate::new_with(&f, &u, limits)?)?)
            } else {
                None
            };
            let (other, independence) = match other {
                Some(v) => {
                    let v = poly_arg(v)?;
                    let ind = multiplicative_independence_with(&f, &u, &v, limits)?;
                    (Some(v), Some(ind))
                }
                None => (None, None),
            };
            Output::Unitcheck(UnitcheckOutput { field: f.polynomial().clone(), unit: f.reduce(&u), conditions, inverse, other, independence })
        }
        Command::Verdict(args) => {
            let descriptor = descriptor(args)?;
            let verdict = evaluate_with(&descriptor, limits)?;
            Output::Verdict(VerdictOutput { descriptor, verdict })
        }
    })
}

fn shape(text: &str) -> Result<Vec<u64>, CliError> {
    text.split('x')
        .map(|t| t.trim().parse::<u64>().map_err(|_| CliError::Usage(format!("bad shape {text:?}; use e.g. 16 or 8x8"))))
        .collect()
}

fn induce(
    group: &str,
    subgroup: Option<&str>,
    trace: &str,
    middle: Option<&str>,
    transversal: &str,
    limits: &Limits,
) -> Result<Output, CliError> {
    let g = group_arg(group, limits)?;
    let top = Subgroup::whole(g.clone());
    let sub = |gens: Option<&str>| -> Result<Subgroup, CliError> {
        match gens {
            Some(s) => subgroup_arg(&g, s),
            None => Err(CliError::Usage("--subgroup is required for this trace".into())),
        }
    };
    let phi = match trace {
        "trivial" => TraceFn::trivial(sub(subgroup)?),
        "regular" => TraceFn::regular(sub(subgroup)?),
        t if t.starts_with("cyclic:") => {
            let body = &t["cyclic:".len()..];
            let (gen, k) = body
                .rsplit_once(':')
                .and_then(|(gen, k)| k.parse::<i64>().ok().map(|k| (gen, k)))
                .ok_or_else(|| CliError::Usage(format!("bad cyclic trace {t:?}; use cyclic:<g>:<k>")))?;
            if subgroup.is_some() {
                return Err(CliError::Usage("cyclic traces live on the subgroup generated by <g>; drop --subgroup".into()));
            }
            TraceFn::cyclic_character(&g, g.find(gen)?, k)?
        }
        path => TraceFn::parse(&read_input(path)?, sub(subgroup)?)?,
    };
    let tv = transversal_arg(transversal)?;
    let ind = induce_trace_with(&phi, &top, tv)?;
    let stabilizer = trace_stabilizer(&phi, &top)?;
    let stages_residual = match middle {
        Some(m) => Some(induction_in_stages_check(&phi, &subgroup_arg(&g, m)?, &top)?),
        None => None,
    };
    let values = (0..g.order())
        .map(|x| {
            let z: Complex64 = ind.extended(x);
            TraceValue { element: g.label(x).to_string(), re: z.re, im: z.im }
        })
        .collect();
    Ok(Output::Induce(InduceOutput {
        group_order: g.order(),
        subgroup: labels(&g, phi.domain().elements()),
        stabilizer: labels(&g, stabilizer.elements()),
        transversal: transversal.to_string(),
        values,
        check: is_trace(&ind)?,
        stages_residual,
    }))
}

/// Table view only: snaps values within 1e-13 of a multiple of 1/2^20, so
/// that exact values print without floating-point noise.
fn clean(x: f64) -> f64 {
    let scaled = (x * 1_048_576.0).round() / 1_048_576.0;
    let y = if (x - scaled).abs() <= 1e-13 { scaled } else { x };
    if y == 0.0 {
        0.0
    } else {
        y
    }
}

fn defect(group: &str, eps: f64, seed: u64, characters: Option<&Path>, limits: &Limits) -> Result<Output, CliError> {
    if !(eps.is_finite() && eps >= 0.0) {
        return Err(CliError::Usage(format!("eps must be a nonnegative number, got {eps}")));
    }
    let g = group_arg(group, limits)?;
    let n = g.order();
    if n > DEFECT_ORDER_CAP {
        return Err(Error::Capacity(format!("regular representation of a group of order {n} exceeds the cap {DEFECT_ORDER_CAP}")).into());
    }
    let pi = AlmostHom::regular(g.clone());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let perturbed = pi.matrices().iter().map(|m| m * unitary_near_identity(n, eps, &mut rng)).collect();
    let f = AlmostHom::new(g.clone(), perturbed)?;
    let table = match characters {
        Some(p) => Some(CharacterTable::parse(&read_input(&p.to_string_lossy())?, g.clone())?),
        None if g.is_abelian() => Some(CharacterTable::abelian(g.clone())?),
        None => None,
    };
    let regular_decomposition = table.map(|t| rational_combination_check(&pi, &t)).transpose()?;
    Ok(Output::Defect(DefectOutput {
        group_order: n,
        dim: f.dim(),
        eps,
        seed,
        regular_defect: hom_defect(&pi),
        defect: hom_defect(&f),
        unitarity_defect: f.matrices().iter().map(unitarity_defect).fold(0.0, f64::max),
        distance_to_regular: nearest_hom_distance(&f, &pi)?,
        regular_decomposition,
    }))
}

fn family_name(alias: &str) -> &str {
    match alias {
        "toral" | "torus" => "toral_extension",
        "bs" => "baumslag_solitar",
        "wreath" | "lamplighter" => "wreath_lamplighter",
        "metabelian" => "free_metabelian",
        "nilpotent" => "virtually_nilpotent",
        "upper_triangular" => "upper_triangular_ring",
        "units" => "units_on_ring",
        "adic" => "adic_units",
        other => other,
    }
}

/// Flags are turned into `key = value` lines so that files and flags share
/// one parser and one set of completeness checks.
fn descriptor(args: &VerdictArgs) -> Result<GroupDescriptor, CliError> {
    if let Some(path) = &args.descriptor {
        return Ok(read_input(&path.to_string_lossy())?.parse()?);
    }
    let family = args.family.as_deref().ok_or_else(|| CliError::Usage("give --descriptor or --family".into()))?;
    let mut text = format!("family = {}\n", family_name(family));
    let mut put = |k: &str, v: Option<String>| {
        if let Some(v) = v {
            text.push_str(&format!("{k} = {v}\n"));
        }
    };
    put("matrix", args.matrix.clone());
    put("n", args.n.map(|v| v.to_string()));
    put("base", args.base.as_ref().map(|b| b.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")));
    put("d", args.d.map(|v| v.to_string()));
    put("rank", args.rank.map(|v| v.to_string()));
    put("name", args.name.clone());
    put("field", args.field.clone());
    put("p", args.p.map(|v| v.to_string()));
    put("q", args.q.map(|v| v.to_string()));
    put("description", args.description.clone());
    Ok(text.parse()?)
}
