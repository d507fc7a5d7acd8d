use serde::{Deserialize, Serialize};

use super::descriptor::GroupDescriptor;
use crate::fieldrank::{field_report_with, FieldReport};
use crate::polyclass::{classify_automorphism_with, Certification, SpectralClass};
use crate::{IntMatrix, IntPoly, Limits, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Stable,
    NotStable,
    Unknown,
    ConditionalOnRigidity,
}

/// A result the verdict rests on: a stable identifier plus the rule it
/// licenses, in this crate's wording.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Citation {
    pub id: String,
    pub rule: String,
}

pub fn citation(id: &str) -> Citation {
    let rule = match id {
        "CorD.1" => "free metabelian group of finite rank => stable",
        "CorD.2" => "wreath product of a finitely generated abelian group with Z^d => stable",
        "CorD.3" => "BS(1, n) with n != 0 => stable",
        "CorD.4" => "Z^k extended by an ergodic integer automorphism => stable",
        "CorI" => "finitely generated virtually nilpotent => stable",
        "CorF" => "infinite unit group of a non-Archimedean local ring acting on the dual of that ring => not stable",
        "ThmJ" => "upper triangular group over a ring of integers whose unit group has rank one => stable",
        "Thm11.4" => "polycyclic group whose action has rank one type => stable",
        "PropL" => "units acting on the integers of a totally real field => stable, assuming measure rigidity",
        "Mar00" => "higher rank measure rigidity conjecture",
        "Q2" => "open: dense periodic measures for a single toral automorphism of mixed type",
        "ThmK" => "virtually polycyclic stability is equivalent to dense periodic measures for abelian actions on tori",
        "ThmE" => "stability of all finitely generated metabelian groups is equivalent to dense periodic measures for abelian actions with the descending chain condition",
        _ => "unregistered identifier",
    };
    Citation { id: id.to_string(), rule: rule.to_string() }
}

/// One verified fact used by a rule.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    /// Operation that produced the fact.
    pub operation: String,
    /// Condition tested on its output.
    pub condition: String,
    pub holds: bool,
    pub certification: Certification,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<Detail>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Detail {
    Spectral(SpectralClass),
    Field(FieldReport),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub family: String,
    pub status: Status,
    pub citation: Citation,
    /// Further results relevant to the verdict, e.g. equivalences that would
    /// settle an unknown case.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub related: Vec<Citation>,
    pub evidence: Vec<Check>,
    pub explanation: String,
}

pub fn evaluate(d: &GroupDescriptor) -> Result<Verdict> {
    evaluate_with(d, &Limits::default())
}

fn param(condition: impl Into<String>, holds: bool) -> Check {
    Check {
        operation: "parameters".into(),
        condition: condition.into(),
        holds,
        certification: Certification::Exact,
        detail: None,
    }
}

fn spectral_check(class: &SpectralClass, condition: &str) -> Check {
    Check {
        operation: "classify_automorphism".into(),
        condition: condition.into(),
        holds: spectral_condition(class, condition).unwrap_or(false),
        // ergodicity, finite order and unipotency are decided exactly
        certification: Certification::Exact,
        detail: Some(Detail::Spectral(class.clone())),
    }
}

fn spectral_condition(class: &SpectralClass, condition: &str) -> Option<bool> {
    Some(match condition {
        "is_ergodic" => class.is_ergodic,
        "!is_ergodic" => !class.is_ergodic,
        "is_finite_order" => class.is_finite_order,
        "is_unipotent" => class.is_unipotent,
        "!is_finite_order && !is_unipotent" => !class.is_finite_order && !class.is_unipotent,
        _ => return None,
    })
}

fn field_check(report: &FieldReport, condition: &str) -> Check {
    Check {
        operation: "field_report".into(),
        condition: condition.into(),
        holds: field_condition(report, condition).unwrap_or(false),
        certification: Certification::Exact,
        detail: Some(Detail::Field(report.clone())),
    }
}

fn field_condition(r: &FieldReport, condition: &str) -> Option<bool> {
    Some(match condition {
        "unit_rank == 1" => r.unit_rank == 1,
        "unit_rank != 1" => r.unit_rank != 1,
        "totally_real" => r.totally_real,
        "!totally_real" => !r.totally_real,
        "unit_rank >= 2" => r.unit_rank >= 2,
        "unit_rank == 0" => r.unit_rank == 0,
        _ => return None,
    })
}

/// Applies the rule table. A definitive status is only returned when every
/// check holds with a certification other than inconclusive; otherwise the
/// verdict falls back to unknown.
pub fn evaluate_with(d: &GroupDescriptor, limits: &Limits) -> Result<Verdict> {
    d.validate()?;
    let family = d.family().to_string();
    let (status, id, related, evidence, explanation): (Status, &str, Vec<&str>, Vec<Check>, String) = match d {
        GroupDescriptor::ToralExtension { matrix } => toral(matrix, limits)?,
        GroupDescriptor::BaumslagSolitar { n } => (
            Status::Stable,
            "CorD.3",
            vec![],
            vec![param(format!("n = {n} != 0"), true)],
            format!("BS(1, {n})"),
        ),
        GroupDescriptor::WreathLamplighter { base, d } => {
            let b: Vec<String> = base.iter().map(|&f| if f == 0 { "Z".into() } else { format!("Z/{f}") }).collect();
            (
                Status::Stable,
                "CorD.2",
                vec![],
                vec![param(format!("base {} is finitely generated abelian, d = {d} >= 1", b.join(" x ")), true)],
                format!("({}) wr Z^{d}", b.join(" x ")),
            )
        }
        GroupDescriptor::FreeMetabelian { rank } => (
            Status::Stable,
            "CorD.1",
            vec![],
            vec![param(format!("rank = {rank} >= 1"), true)],
            format!("free metabelian group of rank {rank}"),
        ),
        GroupDescriptor::VirtuallyNilpotent { name } => (
            Status::Stable,
            "CorI",
            vec![],
            vec![param("finitely generated and virtually nilpotent (asserted by caller)", true)],
            name.clone().unwrap_or_else(|| "virtually nilpotent group".into()),
        ),
        GroupDescriptor::UpperTriangularRing { field } => upper_triangular(field, limits)?,
        GroupDescriptor::UnitsOnRing { field } => units_on_ring(field, limits)?,
        GroupDescriptor::AdicUnits { p, q } => {
            if q.unsigned_abs() == 1 {
                (
                    Status::Unknown,
                    "CorF",
                    vec![],
                    vec![param(format!("<{q}> is infinite"), false)],
                    format!("q = {q} generates a finite group, so the rule does not apply"),
                )
            } else {
                (
                    Status::NotStable,
                    "CorF",
                    vec![],
                    vec![
                        param(format!("p = {p} is prime"), true),
                        param(format!("q = {q} is a {p}-adic unit"), true),
                        param(format!("<{q}> is infinite"), true),
                    ],
                    format!("<{q}> acting on the Prüfer {p}-group"),
                )
            }
        }
        GroupDescriptor::Custom { description } => (
            Status::Unknown,
            "ThmK",
            vec!["ThmE"],
            vec![],
            format!("no rule applies to {description:?}"),
        ),
    };
    let definitive = matches!(status, Status::Stable | Status::NotStable);
    let certified = evidence.iter().all(|c| c.holds && c.certification != Certification::Inconclusive);
    let (status, explanation) = if definitive && !certified {
        (Status::Unknown, format!("{explanation}; evidence not fully certified"))
    } else {
        (status, explanation)
    };
    Ok(Verdict {
        family,
        status,
        citation: citation(id),
        related: related.into_iter().map(citation).collect(),
        evidence,
        explanation,
    })
}

type RuleOutcome = (Status, &'static str, Vec<&'static str>, Vec<Check>, String);

fn toral(matrix: &IntMatrix, limits: &Limits) -> Result<RuleOutcome> {
    let class = classify_automorphism_with(matrix, limits)?;
    let cp = &class.char_poly;
    Ok(if class.is_ergodic {
        (
            Status::Stable,
            "CorD.4",
            vec![],
            vec![spectral_check(&class, "is_ergodic")],
            format!("no eigenvalue is a root of unity (characteristic polynomial {cp})"),
        )
    } else if class.is_finite_order {
        (
            Status::Stable,
            "CorI",
            vec![],
            vec![spectral_check(&class, "is_finite_order")],
            format!("A has order {}, so the group is virtually abelian", class.order.unwrap_or(0)),
        )
    } else if class.is_unipotent {
        (
            Status::Stable,
            "CorI",
            vec![],
            vec![spectral_check(&class, "is_unipotent")],
            format!("A is unipotent (characteristic polynomial {cp}), so the group is nilpotent"),
        )
    } else {
        (
            Status::Unknown,
            "Q2",
            vec!["ThmK"],
            vec![spectral_check(&class, "!is_ergodic"), spectral_check(&class, "!is_finite_order && !is_unipotent")],
            format!("A is neither ergodic, of finite order, nor unipotent (characteristic polynomial {cp})"),
        )
    })
}

fn upper_triangular(field: &IntPoly, limits: &Limits) -> Result<RuleOutcome> {
    let r = field_report_with(field, limits)?;
    let sig = format!("signature ({}, {}), unit rank {}", r.r1, r.r2, r.unit_rank);
    Ok(if r.unit_rank == 1 {
        (Status::Stable, "ThmJ", vec![], vec![field_check(&r, "unit_rank == 1")], sig)
    } else {
        (
            Status::Unknown,
            "ThmJ",
            vec!["ThmK"],
            vec![field_check(&r, "unit_rank != 1")],
            format!("{sig}; the rank-one rule is only sufficient"),
        )
    })
}

fn units_on_ring(field: &IntPoly, limits: &Limits) -> Result<RuleOutcome> {
    let r = field_report_with(field, limits)?;
    let sig = format!("signature ({}, {}), unit rank {}", r.r1, r.r2, r.unit_rank);
    Ok(if r.totally_real && r.unit_rank >= 2 {
        (
            Status::ConditionalOnRigidity,
            "PropL",
            vec!["Mar00"],
            vec![field_check(&r, "totally_real"), field_check(&r, "unit_rank >= 2")],
            sig,
        )
    } else if r.totally_real && r.unit_rank == 1 {
        (
            Status::Stable,
            "Thm11.4",
            vec!["PropL"],
            vec![field_check(&r, "totally_real"), field_check(&r, "unit_rank == 1")],
            format!("{sig}; the action has rank one type"),
        )
    } else if r.unit_rank == 0 {
        (
            Status::Unknown,
            "ThmK",
            vec![],
            vec![field_check(&r, "unit_rank == 0")],
            format!("{sig}; the unit group is finite, so the group is virtually abelian but no rule is encoded for it"),
        )
    } else {
        (Status::Unknown, "ThmK", vec!["PropL"], vec![field_check(&r, "!totally_real")], format!("{sig}; the field is not totally real"))
    })
}

/// Re-runs the operation behind every check from the descriptor alone and
/// confirms that it reproduces the recorded detail and condition value.
pub fn recheck(d: &GroupDescriptor, v: &Verdict) -> Result<bool> {
    let limits = Limits::default();
    for c in &v.evidence {
        let ok = match (c.operation.as_str(), d) {
            ("classify_automorphism", GroupDescriptor::ToralExtension { matrix }) => {
                let class = classify_automorphism_with(matrix, &limits)?;
                c.detail == Some(Detail::Spectral(class.clone())) && spectral_condition(&class, &c.condition) == Some(c.holds)
            }
            ("field_report", GroupDescriptor::UpperTriangularRing { field } | GroupDescriptor::UnitsOnRing { field }) => {
                let r = field_report_with(field, &limits)?;
                c.detail == Some(Detail::Field(r.clone())) && field_condition(&r, &c.condition) == Some(c.holds)
            }
            ("parameters", _) => d.validate().is_ok() && c.detail.is_none(),
            _ => false,
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Block diagonal `[[2,1],[1,1]] ⊕ [[1,1],[0,1]]`: hyperbolic on one plane,
/// a unipotent shear on the other.
pub fn mixed_type_example() -> IntMatrix {
    IntMatrix::from_rows(&[vec![2, 1, 0, 0], vec![1, 1, 0, 0], vec![0, 0, 1, 1], vec![0, 0, 0, 1]])
        .expect("fixed 4x4 matrix")
}

/// Descriptors of the reference verdicts, in a fixed order.
pub fn reference_descriptors() -> Vec<GroupDescriptor> {
    let m = |rows: &[Vec<i64>]| IntMatrix::from_rows(rows).expect("fixed matrix");
    vec![
        GroupDescriptor::ToralExtension { matrix: m(&[vec![2, 1], vec![1, 1]]) },
        GroupDescriptor::BaumslagSolitar { n: 2 },
        GroupDescriptor::UpperTriangularRing { field: IntPoly::from_i64(&[-2, 0, 1]) },
        GroupDescriptor::AdicUnits { p: 2, q: 3 },
        GroupDescriptor::ToralExtension { matrix: m(&[vec![1, 1], vec![0, 1]]) },
        GroupDescriptor::ToralExtension { matrix: mixed_type_example() },
    ]
}
