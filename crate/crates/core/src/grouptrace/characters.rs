use std::sync::Arc;

use num_complex::Complex64;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use super::group::FiniteGroup;
use super::hs::AlmostHom;
use super::subgroup::Subgroup;
use crate::{Error, Result};

const ORTHO_TOL: f64 = 1e-8;

/// Irreducible characters of a group, one value per conjugacy class.
#[derive(Debug, Clone, PartialEq)]
pub struct CharacterTable {
    group: Arc<FiniteGroup>,
    names: Vec<String>,
    /// `rows[i][c]` is the value of character `i` on class `c` (in the
    /// group's class order).
    rows: Vec<Vec<Complex64>>,
}

impl CharacterTable {
    /// Validates that the rows are orthonormal for the class inner product
    /// and that there is one row per class.
    pub fn new(group: Arc<FiniteGroup>, names: Vec<String>, rows: Vec<Vec<Complex64>>) -> Result<Self> {
        let k = group.classes().len();
        if rows.len() != k || names.len() != k {
            return Err(Error::CharacterTable(format!("{} rows for {k} conjugacy classes", rows.len())));
        }
        if rows.iter().any(|r| r.len() != k) {
            return Err(Error::CharacterTable(format!("every row needs {k} class values")));
        }
        let t = CharacterTable { group, names, rows };
        for i in 0..k {
            for j in 0..k {
                let ip = t.inner_product(&t.rows[i], &t.rows[j]);
                let want = if i == j { 1.0 } else { 0.0 };
                if (ip - Complex64::new(want, 0.0)).norm() > ORTHO_TOL {
                    return Err(Error::CharacterTable(format!(
                        "rows {} and {} have inner product {ip}",
                        t.names[i], t.names[j]
                    )));
                }
            }
        }
        Ok(t)
    }

    /// `⟨a, b⟩ = (1/|G|) Σ_C |C| a(C) conj(b(C))`.
    pub fn inner_product(&self, a: &[Complex64], b: &[Complex64]) -> Complex64 {
        let n = self.group.order() as f64;
        self.group.classes().iter().zip(a.iter().zip(b)).map(|(c, (x, y))| x * y.conj() * c.len() as f64).sum::<Complex64>()
            / n
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn rows(&self) -> &[Vec<Complex64>] {
        &self.rows
    }

    /// Character degree `χ(e)`.
    pub fn degree(&self, i: usize) -> f64 {
        self.rows[i][self.group.class_of(self.group.identity())].re
    }

    /// Dual group of an abelian group, with exact angles: character `i`
    /// sends `g` to `exp(2πi θ_i(g))`.
    pub fn abelian(group: Arc<FiniteGroup>) -> Result<Self> {
        let angles = dual_group_angles(&group)?;
        let rows: Vec<Vec<Complex64>> = angles
            .iter()
            .map(|th| {
                group
                    .classes()
                    .iter()
                    .map(|c| {
                        let a = th[c[0]];
                        Complex64::from_polar(1.0, std::f64::consts::TAU * *a.numer() as f64 / *a.denom() as f64)
                    })
                    .collect()
            })
            .collect();
        let names = (0..rows.len()).map(|i| format!("chi{i}")).collect();
        CharacterTable::new(group, names, rows)
    }

    /// Table file: first line lists one class representative per column
    /// (labels or indices, separated by `|`), then one line per character
    /// `name: v1 | v2 | ...` with values `re` or `re im`.
    pub fn parse(text: &str, group: Arc<FiniteGroup>) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| Error::Parse("empty character table".into()))?;
        let reps = header.split('|').map(|t| group.find(t)).collect::<Result<Vec<_>>>()?;
        let k = group.classes().len();
        let mut col_of_class = vec![None; k];
        for (col, &r) in reps.iter().enumerate() {
            let c = group.class_of(r);
            if col_of_class[c].replace(col).is_some() {
                return Err(Error::CharacterTable(format!("two columns for the class of {}", group.label(r))));
            }
        }
        let mut names = Vec::new();
        let mut rows = Vec::new();
        for line in lines {
            let (name, vals) = line.split_once(':').ok_or_else(|| Error::Parse(format!("expected `name: values`, got {line:?}")))?;
            let vals = vals
                .split('|')
                .map(|v| {
                    let nums = v
                        .split_whitespace()
                        .map(|t| t.parse::<f64>().map_err(|_| Error::Parse(format!("bad value {t:?}"))))
                        .collect::<Result<Vec<_>>>()?;
                    match nums[..] {
                        [re] => Ok(Complex64::new(re, 0.0)),
                        [re, im] => Ok(Complex64::new(re, im)),
                        _ => Err(Error::Parse(format!("bad character value {v:?}"))),
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            if vals.len() != reps.len() {
                return Err(Error::CharacterTable(format!("row {name} has {} values for {} columns", vals.len(), reps.len())));
            }
            let row = (0..k)
                .map(|c| col_of_class[c].map(|col| vals[col]))
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| Error::CharacterTable("some conjugacy class has no column".into()))?;
            names.push(name.trim().to_string());
            rows.push(row);
        }
        CharacterTable::new(group, names, rows)
    }
}

/// `θ_i(g) ∈ [0, 1)` for every character `i` of an abelian group, built by
/// extending characters one cyclic step at a time.
pub fn dual_group_angles(group: &Arc<FiniteGroup>) -> Result<Vec<Vec<Ratio<i64>>>> {
    if !group.is_abelian() {
        return Err(Error::Unsupported("dual group of a nonabelian group".into()));
    }
    let n = group.order();
    let frac = |r: Ratio<i64>| r - r.floor();
    let mut sub = Subgroup::trivial(group.clone());
    let mut chars: Vec<Vec<Option<Ratio<i64>>>> = vec![{
        let mut v = vec![None; n];
        v[group.identity()] = Some(Ratio::from_integer(0));
        v
    }];
    while sub.order() < n {
        let g = (0..n).find(|&x| !sub.contains(x)).expect("proper subgroup");
        // smallest m with g^m in sub
        let mut m = 1usize;
        let mut gm = g;
        while !sub.contains(gm) {
            gm = group.mul(gm, g);
            m += 1;
        }
        let bigger = Subgroup::generated(group.clone(), &[sub.elements(), &[g]].concat())?;
        let mut next = Vec::with_capacity(chars.len() * m);
        for th in &chars {
            let base = th[gm].expect("defined on the subgroup");
            for j in 0..m as i64 {
                let alpha = (base + j) / m as i64;
                let mut v = th.clone();
                let mut ga = g;
                for a in 1..m as i64 {
                    for &k in sub.elements() {
                        let x = group.mul(k, ga);
                        v[x] = Some(frac(th[k].expect("defined on the subgroup") + alpha * a));
                    }
                    ga = group.mul(ga, g);
                }
                next.push(v);
            }
        }
        chars = next;
        sub = bigger;
    }
    Ok(chars.into_iter().map(|v| v.into_iter().map(|a| a.expect("defined everywhere")).collect()).collect())
}

/// Decomposition of the normalized character of a representation as a
/// convex combination of normalized irreducible characters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Decomposition {
    /// `(character, multiplicity, weight)` with `weight = m·dim χ / dim π`
    /// as an exact fraction.
    pub terms: Vec<(String, u64, String)>,
    pub residual: f64,
}

/// Multiplicities by inner products, then reconstruction of
/// `tr π(g) / dim π` as `Σ (m_i dim χ_i / dim π) · χ_i(g) / dim χ_i`.
pub fn rational_combination_check(pi: &AlmostHom, table: &CharacterTable) -> Result<Decomposition> {
    let g = pi.group();
    if **g != *table.group {
        return Err(Error::Argument("character table belongs to another group".into()));
    }
    let dim = pi.dim();
    let chi_pi: Vec<Complex64> = g.classes().iter().map(|c| pi.matrix(c[0]).trace()).collect();
    let mut terms = Vec::new();
    let mut recon = vec![Complex64::new(0.0, 0.0); chi_pi.len()];
    for (i, row) in table.rows.iter().enumerate() {
        let ip = table.inner_product(&chi_pi, row);
        let m = ip.re.round();
        if (ip - Complex64::new(m, 0.0)).norm() > 1e-6 || m < 0.0 {
            return Err(Error::Argument(format!("multiplicity of {} is {ip}, not a natural number", table.names[i])));
        }
        if m == 0.0 {
            continue;
        }
        let d = table.degree(i);
        let di = d.round() as i64;
        let w = Ratio::new(m as i64 * di, dim as i64);
        for (r, v) in recon.iter_mut().zip(row) {
            *r += v / d * (*w.numer() as f64 / *w.denom() as f64);
        }
        terms.push((table.names[i].clone(), m as u64, w.to_string()));
    }
    let residual = chi_pi.iter().zip(&recon).map(|(a, b)| (a / dim as f64 - b).norm()).fold(0.0, f64::max);
    Ok(Decomposition { terms, residual })
}
