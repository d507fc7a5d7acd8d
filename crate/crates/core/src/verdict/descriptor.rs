use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Error, IntMatrix, IntPoly, Result};

/// A group presented by the family it belongs to and that family's
/// parameters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum GroupDescriptor {
    /// `Z^k ⋊_A Z` for an integer automorphism `A`.
    ToralExtension { matrix: IntMatrix },
    /// `BS(1, n) = Z[1/n] ⋊ Z`.
    BaumslagSolitar { n: i64 },
    /// `B ≀ Z^d` for a finitely generated abelian base given by its
    /// invariant factors (`0` stands for a copy of `Z`).
    WreathLamplighter { base: Vec<u64>, d: u32 },
    FreeMetabelian { rank: u32 },
    /// A group the caller asserts to be finitely generated and virtually
    /// nilpotent.
    VirtuallyNilpotent {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
    },
    /// Invertible upper triangular matrices over the ring of integers of
    /// the field defined by `field`.
    UpperTriangularRing { field: IntPoly },
    /// `O* ⋉ O` for the ring of integers `O` of the field defined by `field`.
    UnitsOnRing { field: IntPoly },
    /// `⟨q⟩ ⋉ Z(p^∞)`: multiplication by the `p`-adic unit `q` on the
    /// Prüfer `p`-group, the Pontryagin dual of the `p`-adic integers.
    AdicUnits { p: u64, q: i64 },
    Custom { description: String },
}

impl GroupDescriptor {
    pub fn family(&self) -> &'static str {
        match self {
            GroupDescriptor::ToralExtension { .. } => "toral_extension",
            GroupDescriptor::BaumslagSolitar { .. } => "baumslag_solitar",
            GroupDescriptor::WreathLamplighter { .. } => "wreath_lamplighter",
            GroupDescriptor::FreeMetabelian { .. } => "free_metabelian",
            GroupDescriptor::VirtuallyNilpotent { .. } => "virtually_nilpotent",
            GroupDescriptor::UpperTriangularRing { .. } => "upper_triangular_ring",
            GroupDescriptor::UnitsOnRing { .. } => "units_on_ring",
            GroupDescriptor::AdicUnits { .. } => "adic_units",
            GroupDescriptor::Custom { .. } => "custom",
        }
    }

    /// Parameter checks that do not need any computation.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Descriptor(m));
        match self {
            GroupDescriptor::ToralExtension { matrix } if !matrix.is_square() || matrix.rows() == 0 => {
                bad(format!("toral_extension needs a nonempty square matrix, got {}x{}", matrix.rows(), matrix.cols()))
            }
            GroupDescriptor::BaumslagSolitar { n: 0 } => bad("baumslag_solitar needs n != 0".into()),
            GroupDescriptor::WreathLamplighter { base, .. } if base.is_empty() || base.iter().all(|&b| b == 1) => {
                bad("wreath_lamplighter needs a nontrivial base group".into())
            }
            GroupDescriptor::WreathLamplighter { d: 0, .. } => bad("wreath_lamplighter needs d >= 1".into()),
            GroupDescriptor::FreeMetabelian { rank: 0 } => bad("free_metabelian needs rank >= 1".into()),
            GroupDescriptor::AdicUnits { p, .. } if !is_prime(*p) => bad(format!("adic_units needs a prime p, got {p}")),
            GroupDescriptor::AdicUnits { p, q } if *q == 0 || q.unsigned_abs() % p == 0 => {
                bad(format!("adic_units needs q to be a {p}-adic unit, got {q}"))
            }
            GroupDescriptor::Custom { description } if description.trim().is_empty() => {
                bad("custom descriptor needs a description".into())
            }
            _ => Ok(()),
        }
    }
}

pub(crate) fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// Key-value form, one `key = value` per line (or `key=value` tokens
/// separated by whitespace), e.g. `family = baumslag_solitar` and `n = 2`.
impl FromStr for GroupDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim_start();
        if trimmed.starts_with('{') {
            return serde_json::from_str(trimmed).map_err(|e| Error::Descriptor(e.to_string()));
        }
        let mut fields = std::collections::BTreeMap::new();
        for line in s.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
            let (k, v) = line.split_once('=').ok_or_else(|| Error::Descriptor(format!("expected key = value, got {line:?}")))?;
            fields.insert(k.trim().to_string(), v.trim().to_string());
        }
        let get = |k: &str| fields.get(k).cloned().ok_or_else(|| Error::Descriptor(format!("missing parameter {k:?}")));
        let num = |k: &str| -> Result<i64> { get(k)?.parse().map_err(|_| Error::Descriptor(format!("parameter {k} must be an integer"))) };
        let family = get("family")?;
        let d = match family.as_str() {
            "toral_extension" => GroupDescriptor::ToralExtension { matrix: get("matrix")?.parse().map_err(desc)? },
            "baumslag_solitar" => GroupDescriptor::BaumslagSolitar { n: num("n")? },
            "wreath_lamplighter" => GroupDescriptor::WreathLamplighter {
                base: get("base")?
                    .split(',')
                    .map(|t| t.trim().parse::<u64>().map_err(|_| Error::Descriptor(format!("bad invariant factor {t:?}"))))
                    .collect::<Result<_>>()?,
                d: u32::try_from(num("d")?).map_err(|_| Error::Descriptor("d must be nonnegative".into()))?,
            },
            "free_metabelian" => GroupDescriptor::FreeMetabelian {
                rank: u32::try_from(num("rank")?).map_err(|_| Error::Descriptor("rank must be nonnegative".into()))?,
            },
            "virtually_nilpotent" => GroupDescriptor::VirtuallyNilpotent { name: fields.get("name").cloned() },
            "upper_triangular_ring" => GroupDescriptor::UpperTriangularRing { field: get("field")?.parse().map_err(desc)? },
            "units_on_ring" => GroupDescriptor::UnitsOnRing { field: get("field")?.parse().map_err(desc)? },
            "adic_units" => GroupDescriptor::AdicUnits {
                p: u64::try_from(num("p")?).map_err(|_| Error::Descriptor("p must be positive".into()))?,
                q: num("q")?,
            },
            "custom" => GroupDescriptor::Custom { description: get("description")? },
            other => return Err(Error::Descriptor(format!("unknown family {other:?}"))),
        };
        let allowed: &[&str] = match family.as_str() {
            "toral_extension" => &["matrix"],
            "baumslag_solitar" => &["n"],
            "wreath_lamplighter" => &["base", "d"],
            "free_metabelian" => &["rank"],
            "virtually_nilpotent" => &["name"],
            "upper_triangular_ring" | "units_on_ring" => &["field"],
            "adic_units" => &["p", "q"],
            _ => &["description"],
        };
        if let Some(k) = fields.keys().find(|k| *k != "family" && !allowed.contains(&k.as_str())) {
            return Err(Error::Descriptor(format!("unexpected parameter {k:?} for {family}")));
        }
        d.validate()?;
        Ok(d)
    }
}

fn desc(e: Error) -> Error {
    Error::Descriptor(e.to_string())
}
