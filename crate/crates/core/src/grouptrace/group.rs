use std::collections::HashMap;
use std::str::FromStr;

use crate::{Error, Limits, Result};

/// A finite group given by its multiplication table.
///
/// Elements are indices `0..order`. Every constructor validates the table
/// (Latin square, two-sided identity, associativity) and precomputes
/// inverses and conjugacy classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    identity: usize,
    inverse: Vec<usize>,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    labels: Vec<String>,
}

impl FiniteGroup {
    pub fn from_table(rows: Vec<Vec<usize>>, labels: Option<Vec<String>>) -> Result<Self> {
        Self::from_table_with(rows, labels, &Limits::default())
    }

    pub fn from_table_with(rows: Vec<Vec<usize>>, labels: Option<Vec<String>>, limits: &Limits) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::GroupTable("empty table".into()));
        }
        if n > limits.group_order {
            return Err(Error::Capacity(format!("group order {n} exceeds the cap {}", limits.group_order)));
        }
        let mut table = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::GroupTable(format!("row {i} has {} entries, expected {n}", row.len())));
            }
            let mut seen = vec![false; n];
            for &x in row {
                if x >= n || std::mem::replace(&mut seen[x], true) {
                    return Err(Error::GroupTable(format!("row {i} is not a permutation of 0..{n}")));
                }
                table.push(x as u32);
            }
        }
        for j in 0..n {
            let mut seen = vec![false; n];
            for i in 0..n {
                if std::mem::replace(&mut seen[table[i * n + j] as usize], true) {
                    return Err(Error::GroupTable(format!("column {j} repeats an entry")));
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e * n + x] as usize == x && table[x * n + e] as usize == x))
            .ok_or_else(|| Error::GroupTable("no two-sided identity".into()))?;
        let labels = match labels {
            Some(l) if l.len() == n => l,
            Some(l) => return Err(Error::GroupTable(format!("{} labels for {n} elements", l.len()))),
            None => (0..n).map(|i| i.to_string()).collect(),
        };
        let mut g = FiniteGroup {
            order: n,
            table,
            identity,
            inverse: Vec::new(),
            classes: Vec::new(),
            class_of: Vec::new(),
            labels,
        };
        g.check_associative()?;
        g.finish();
        Ok(g)
    }

    /// Light's test: with a Latin square and identity, the elements `s`
    /// satisfying `(x s) y = x (s y)` for all `x, y` form a subgroup, so
    /// checking a generating set suffices.
    fn check_associative(&self) -> Result<()> {
        let n = self.order;
        let mut reached = vec![false; n];
        reached[self.identity] = true;
        let mut span = vec![self.identity];
        let mut gens = Vec::new();
        while span.len() < n {
            let s = (0..n).find(|&x| !reached[x]).expect("span is a proper subset");
            gens.push(s);
            let mut i = 0;
            while i < span.len() {
                for &t in &gens {
                    for p in [self.mul(span[i], t), self.mul(t, span[i])] {
                        if !reached[p] {
                            reached[p] = true;
                            span.push(p);
                        }
                    }
                }
                i += 1;
            }
        }
        for &s in &gens {
            for x in 0..n {
                let xs = self.mul(x, s);
                for y in 0..n {
                    if self.mul(xs, y) != self.mul(x, self.mul(s, y)) {
                        return Err(Error::GroupTable(format!("not associative at ({x}, {s}, {y})")));
                    }
                }
            }
        }
        Ok(())
    }

    fn finish(&mut self) {
        let n = self.order;
        self.inverse = (0..n).map(|x| (0..n).find(|&y| self.mul(x, y) == self.identity).expect("Latin square")).collect();
        let mut class_of = vec![usize::MAX; n];
        let mut classes = Vec::new();
        for x in 0..n {
            if class_of[x] != usize::MAX {
                continue;
            }
            let mut cls: Vec<usize> = (0..n).map(|g| self.conj(x, g)).collect();
            cls.sort_unstable();
            cls.dedup();
            for &y in &cls {
                class_of[y] = classes.len();
            }
            classes.push(cls);
        }
        self.classes = classes;
        self.class_of = class_of;
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// `x^g = g⁻¹ x g`.
    #[inline]
    pub fn conj(&self, x: usize, g: usize) -> usize {
        let gi = if self.inverse.is_empty() {
            (0..self.order).find(|&y| self.mul(g, y) == self.identity).expect("Latin square")
        } else {
            self.inverse[g]
        };
        self.mul(self.mul(gi, x), g)
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut k = 1;
        let mut p = x;
        while p != self.identity {
            p = self.mul(p, x);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Element by label, or by decimal index when no label matches.
    pub fn find(&self, token: &str) -> Result<usize> {
        let t = token.trim();
        let squash = |s: &str| s.split_whitespace().collect::<Vec<_>>().join(" ");
        if let Some(i) = self.labels.iter().position(|l| squash(l) == squash(t)) {
            return Ok(i);
        }
        match t.parse::<usize>() {
            Ok(i) if i < self.order => Ok(i),
            _ => Err(Error::Argument(format!("no element {t:?} in a group of order {}", self.order))),
        }
    }

    /// Rows of the multiplication table.
    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        (0..self.order).map(|a| (0..self.order).map(|b| self.mul(a, b)).collect()).collect()
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        Self::cyclic_with(n, &Limits::default())
    }

    pub fn cyclic_with(n: usize, limits: &Limits) -> Result<Self> {
        check_order(n, limits)?;
        let rows = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        let labels = (0..n)
            .map(|k| match k {
                0 => "e".to_string(),
                1 => "a".to_string(),
                _ => format!("a^{k}"),
            })
            .collect();
        Self::from_table_with(rows, Some(labels), limits)
    }

    /// Dihedral group of order `2n`, elements `r^k` and `r^k s` (printed as
    /// `e`, `r`, `r^2`, ..., `s`, `r s`, ...) with
    /// `s r s = r⁻¹`.
    pub fn dihedral(n: usize) -> Result<Self> {
        Self::dihedral_with(n, &Limits::default())
    }

    pub fn dihedral_with(n: usize, limits: &Limits) -> Result<Self> {
        check_order(2 * n, limits)?;
        // index k + n e  <->  r^k s^e
        let mul = |a: usize, b: usize| {
            let (k1, e1) = (a % n, a / n);
            let (k2, e2) = (b % n, b / n);
            let k = if e1 == 0 { (k1 + k2) % n } else { (k1 + n - k2) % n };
            k + n * ((e1 + e2) % 2)
        };
        let rows = (0..2 * n).map(|a| (0..2 * n).map(|b| mul(a, b)).collect()).collect();
        let rot = |k: usize| match k {
            0 => String::new(),
            1 => "r".to_string(),
            _ => format!("r^{k}"),
        };
        let labels = (0..2 * n)
            .map(|i| match (i < n, rot(i % n)) {
                (true, r) if r.is_empty() => "e".to_string(),
                (true, r) => r,
                (false, r) if r.is_empty() => "s".to_string(),
                (false, r) => format!("{r} s"),
            })
            .collect();
        Self::from_table_with(rows, Some(labels), limits)
    }

    pub fn symmetric(n: usize) -> Result<Self> {
        if !(1..=5).contains(&n) {
            return Err(Error::Argument(format!("symmetric preset limited to degree 1..=5, got {n}")));
        }
        let mut gens = vec![Permutation::cycle(n, &[0, 1])?];
        if n > 2 {
            gens.push(Permutation::cycle(n, &(0..n).collect::<Vec<_>>())?);
        }
        Self::from_permutations(n, &gens)
    }

    pub fn alternating(n: usize) -> Result<Self> {
        if !(1..=5).contains(&n) {
            return Err(Error::Argument(format!("alternating preset limited to degree 1..=5, got {n}")));
        }
        let gens: Vec<_> = (2..n).map(|k| Permutation::cycle(n, &[0, 1, k])).collect::<Result<_>>()?;
        Self::from_permutations(n, &gens)
    }

    pub fn from_permutations(degree: usize, gens: &[Permutation]) -> Result<Self> {
        Self::from_permutations_with(degree, gens, &Limits::default())
    }

    /// Closure of the generators. Composition is `(g h)(i) = g(h(i))`.
    pub fn from_permutations_with(degree: usize, gens: &[Permutation], limits: &Limits) -> Result<Self> {
        if degree == 0 || degree > 12 {
            return Err(Error::Argument(format!("permutation degree {degree} outside 1..=12")));
        }
        if let Some(g) = gens.iter().find(|g| g.degree() != degree) {
            return Err(Error::Argument(format!("generator {g} has degree {}, expected {degree}", g.degree())));
        }
        let id = Permutation::identity(degree);
        let mut elems = vec![id.clone()];
        let mut index: HashMap<Permutation, usize> = HashMap::from([(id, 0)]);
        let mut i = 0;
        while i < elems.len() {
            for g in gens {
                let p = elems[i].compose(g);
                if !index.contains_key(&p) {
                    if elems.len() >= limits.group_order {
                        return Err(Error::Capacity(format!("permutation group exceeds order cap {}", limits.group_order)));
                    }
                    index.insert(p.clone(), elems.len());
                    elems.push(p);
                }
            }
            i += 1;
        }
        elems.sort();
        let index: HashMap<&Permutation, usize> = elems.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let rows = elems.iter().map(|a| elems.iter().map(|b| index[&a.compose(b)]).collect()).collect();
        let labels = elems.iter().map(ToString::to_string).collect();
        Self::from_table_with(rows, Some(labels), limits)
    }

    /// `G × K` with elements `(g, k)` at index `g·|K| + k`.
    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Result<Self> {
        Self::direct_product_with(a, b, &Limits::default())
    }

    pub fn direct_product_with(a: &FiniteGroup, b: &FiniteGroup, limits: &Limits) -> Result<Self> {
        let m = b.order;
        check_order(a.order.saturating_mul(m), limits)?;
        let n = a.order * m;
        let rows = (0..n)
            .map(|x| (0..n).map(|y| a.mul(x / m, y / m) * m + b.mul(x % m, y % m)).collect())
            .collect();
        let labels = (0..n).map(|x| format!("({}, {})", a.label(x / m), b.label(x % m))).collect();
        Self::from_table_with(rows, Some(labels), limits)
    }

    /// Named presets: `C<n>`, `D<n>` (order `2n`), `S<n>`, `A<n>` with
    /// `n <= 5`, `Q8`, and direct products joined by `x`, e.g. `C2xS3`.
    pub fn preset(name: &str) -> Result<Self> {
        Self::preset_with(name, &Limits::default())
    }

    pub fn preset_with(name: &str, limits: &Limits) -> Result<Self> {
        let parts: Vec<&str> = name.split(['x', 'X']).map(str::trim).collect();
        if parts.len() > 1 {
            let mut g = Self::preset_with(parts[0], limits)?;
            for p in &parts[1..] {
                g = Self::direct_product_with(&g, &Self::preset_with(p, limits)?, limits)?;
            }
            return Ok(g);
        }
        let name = parts[0];
        if name.eq_ignore_ascii_case("q8") {
            check_order(8, limits)?;
            return Self::quaternion();
        }
        let bad = || Error::Argument(format!("unknown group preset {name:?}"));
        let kind = name.chars().next().ok_or_else(bad)?.to_ascii_uppercase();
        let n: usize = name[1..].parse().map_err(|_| bad())?;
        match kind {
            'C' if n >= 1 => Self::cyclic_with(n, limits),
            'D' if n >= 1 => Self::dihedral_with(n, limits),
            'S' | 'A' if (1..=5).contains(&n) => {
                let order: usize = (1..=n).product();
                if kind == 'S' {
                    check_order(order, limits)?;
                    Self::symmetric(n)
                } else {
                    check_order((order / 2).max(1), limits)?;
                    Self::alternating(n)
                }
            }
            'S' => Self::symmetric(n),
            'A' => Self::alternating(n),
            _ => Err(bad()),
        }
    }

    fn quaternion() -> Result<Self> {
        // ±1, ±i, ±j, ±k as (sign, unit) with unit in {1, i, j, k}
        let unit_mul = |a: usize, b: usize| -> (bool, usize) {
            match (a, b) {
                (0, x) | (x, 0) => (false, x),
                (x, y) if x == y => (true, 0),
                (1, 2) => (false, 3),
                (2, 3) => (false, 1),
                (3, 1) => (false, 2),
                (2, 1) => (true, 3),
                (3, 2) => (true, 1),
                (1, 3) => (true, 2),
                _ => unreachable!(),
            }
        };
        let rows = (0..8)
            .map(|a: usize| {
                (0..8)
                    .map(|b: usize| {
                        let (neg, u) = unit_mul(a % 4, b % 4);
                        u + 4 * (((a / 4) + (b / 4) + usize::from(neg)) % 2)
                    })
                    .collect()
            })
            .collect();
        let names = ["1", "i", "j", "k"];
        let labels = (0..8).map(|x| format!("{}{}", if x < 4 { "" } else { "-" }, names[x % 4])).collect();
        Self::from_table(rows, Some(labels))
    }
}

fn check_order(n: usize, limits: &Limits) -> Result<()> {
    if n == 0 {
        return Err(Error::Argument("group order must be positive".into()));
    }
    if n > limits.group_order {
        return Err(Error::Capacity(format!("group order {n} exceeds the cap {}", limits.group_order)));
    }
    Ok(())
}

/// Group file: either `perm:` on the first line followed by generators in
/// cycle notation (one per line, degree inferred from the largest point), or
/// the order on the first line followed by the table rows.
impl FromStr for FiniteGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lines: Vec<&str> =
            s.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')).collect();
        let Some(first) = lines.first() else {
            return Err(Error::Parse("empty group file".into()));
        };
        if let Some(rest) = first.strip_prefix("perm:") {
            let texts: Vec<&str> = std::iter::once(rest.trim()).chain(lines[1..].iter().copied()).filter(|l| !l.is_empty()).collect();
            let degree = texts.iter().map(|t| max_point(t)).collect::<Result<Vec<_>>>()?.into_iter().max().unwrap_or(1);
            let gens = texts.iter().map(|t| Permutation::parse_cycles(t, degree)).collect::<Result<Vec<_>>>()?;
            return Self::from_permutations(degree, &gens);
        }
        let n: usize = first.parse().map_err(|_| Error::Parse(format!("bad group order {first:?}")))?;
        if lines.len() != n + 1 {
            return Err(Error::Parse(format!("expected {n} table rows, found {}", lines.len() - 1)));
        }
        let rows = lines[1..]
            .iter()
            .map(|l| {
                l.split([',', ' ', '\t'])
                    .filter(|t| !t.is_empty())
                    .map(|t| t.parse::<usize>().map_err(|_| Error::Parse(format!("bad table entry {t:?}"))))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_table(rows, None)
    }
}

fn max_point(text: &str) -> Result<usize> {
    let mut m = 1;
    for t in text.split(|c: char| !c.is_ascii_digit()).filter(|t| !t.is_empty()) {
        m = m.max(t.parse::<usize>().map_err(|_| Error::Parse(format!("bad point {t:?}")))?);
    }
    Ok(m)
}

/// Permutation of `{0, ..., n-1}`, printed 1-based in cycle notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<u8>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n as u8).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || std::mem::replace(&mut seen[x], true) {
                return Err(Error::Argument(format!("{images:?} is not a permutation")));
            }
        }
        Ok(Permutation(images.into_iter().map(|x| x as u8).collect()))
    }

    /// Single cycle on 0-based points.
    pub fn cycle(n: usize, points: &[usize]) -> Result<Self> {
        let mut img: Vec<usize> = (0..n).collect();
        for (i, &p) in points.iter().enumerate() {
            let q = points[(i + 1) % points.len()];
            if p >= n || q >= n {
                return Err(Error::Argument(format!("cycle point outside 1..={n}")));
            }
            img[p] = q;
        }
        Self::from_images(img)
    }

    /// Parses products of 1-based cycles such as `(1 2 3)(4 5)` or `(1,2)`.
    /// Cycles are composed right to left.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Self> {
        let mut p = Permutation::identity(degree);
        let t = text.trim();
        if t.is_empty() || t == "()" {
            return Ok(p);
        }
        for chunk in t.split(')') {
            let chunk = chunk.trim();
            if chunk.is_empty() {
                continue;
            }
            let inner = chunk
                .strip_prefix('(')
                .ok_or_else(|| Error::Parse(format!("bad cycle notation {text:?}")))?;
            let pts = inner
                .split([',', ' '])
                .filter(|s| !s.is_empty())
                .map(|s| match s.parse::<usize>() {
                    Ok(v) if (1..=degree).contains(&v) => Ok(v - 1),
                    _ => Err(Error::Parse(format!("bad point {s:?} in {text:?}"))),
                })
                .collect::<Result<Vec<_>>>()?;
            let mut sorted = pts.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != pts.len() {
                return Err(Error::Parse(format!("repeated point in cycle {inner:?}")));
            }
            p = p.compose(&Permutation::cycle(degree, &pts)?);
        }
        Ok(p)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn image(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&i| self.0[i as usize]).collect())
    }
}

impl std::fmt::Display for Permutation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut any = false;
        for start in 0..n {
            if seen[start] || self.image(start) == start {
                continue;
            }
            any = true;
            let mut cyc = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cyc.push((i + 1).to_string());
                i = self.image(i);
            }
            write!(f, "({})", cyc.join(" "))?;
        }
        if !any {
            f.write_str("()")?;
        }
        Ok(())
    }
}
