//! Finite groups as dense Cayley tables.
//!
//! Elements are dense indices `0..order`. Permutation groups compose right
//! factor first, so `mul[i][j]` is "apply `j`, then `i`". With that
//! convention `x = (1234)` and `y = (12)` give `xy = (134)`, which is the
//! ordering the S4 coefficient vectors are laid out in.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_ORDER: usize = 64;

/// Cycle notation of the 24 elements of S4 in coefficient order: the
/// twelve even permutations (`a1..a12`) followed by the twelve odd ones
/// (`b1..b12`).
pub const S4_CYCLES: [&str; 24] = [
    "1", "(13)(24)", "(14)(23)", "(12)(34)", "(134)", "(243)", "(142)", "(123)", "(143)", "(132)",
    "(124)", "(234)", "(1234)", "(1432)", "(24)", "(13)", "(14)", "(23)", "(1243)", "(1342)",
    "(12)", "(34)", "(1324)", "(1423)",
];

/// The same 24 elements written as words in `x = (1234)` and `y = (12)`.
pub const S4_WORDS: [&str; 24] = [
    "1",
    "x^2",
    "y x^2 y",
    "x^2 y x^2 y",
    "x y",
    "x^3 y",
    "x y x^2",
    "x^3 y x^2",
    "y x^3",
    "x^2 y x",
    "x^2 y x^3",
    "y x",
    "x",
    "x^3",
    "x y x^2 y",
    "y x^2 y x",
    "x^3 y x",
    "x y x^3",
    "x y x",
    "x^3 y x^3",
    "y",
    "x^2 y x^2",
    "y x^2",
    "x^2 y",
];

/// Index of `x = (1234)` in the S4 table.
pub const S4_ALPHA: usize = 12;
/// Index of `y = (12)` in the S4 table.
pub const S4_BETA: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GroupKind {
    Cyclic(usize),
    Klein,
    /// Dihedral group of the given order `2n`.
    Dihedral(usize),
    Alternating4,
    Symmetric4,
}

impl GroupKind {
    pub fn order(&self) -> usize {
        match *self {
            GroupKind::Cyclic(n) => n,
            GroupKind::Klein => 4,
            GroupKind::Dihedral(n) => n,
            GroupKind::Alternating4 => 12,
            GroupKind::Symmetric4 => 24,
        }
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupKind::Cyclic(n) => write!(f, "Z{n}"),
            GroupKind::Klein => f.write_str("K4"),
            GroupKind::Dihedral(n) => write!(f, "D{n}"),
            GroupKind::Alternating4 => f.write_str("A4"),
            GroupKind::Symmetric4 => f.write_str("S4"),
        }
    }
}

impl FromStr for GroupKind {
    type Err = Error;

    /// Accepts `Z4`, `K4`, `D8`, `A4`, `S4`, `S3`, `Zn:<n>`, `D:<2n>`, and
    /// the shorthands `Z<n>` / `D<2n>`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let num = |digits: &str| -> Result<usize> {
            digits
                .parse::<usize>()
                .map_err(|_| Error::UnknownGroup(s.to_string()))
        };
        match t {
            "K4" | "V4" | "Klein" | "Klein4" => return Ok(GroupKind::Klein),
            "A4" => return Ok(GroupKind::Alternating4),
            "S4" => return Ok(GroupKind::Symmetric4),
            "S3" => return Ok(GroupKind::Dihedral(6)),
            _ => {}
        }
        if let Some(d) = t.strip_prefix("Zn:") {
            Ok(GroupKind::Cyclic(num(d)?))
        } else if let Some(d) = t.strip_prefix("D:") {
            Ok(GroupKind::Dihedral(num(d)?))
        } else if let Some(d) = t.strip_prefix('Z') {
            Ok(GroupKind::Cyclic(num(d)?))
        } else if let Some(d) = t.strip_prefix('D') {
            Ok(GroupKind::Dihedral(num(d)?))
        } else {
            Err(Error::UnknownGroup(s.to_string()))
        }
    }
}

/// A finite group given by its multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupTable {
    pub kind: GroupKind,
    pub order: usize,
    pub mul: Vec<Vec<usize>>,
    pub inv: Vec<usize>,
    pub identity: usize,
    pub names: Vec<String>,
    /// Elements bound to the expression symbols `x` and `y`, in that order.
    pub generators: Vec<usize>,
}

impl GroupTable {
    pub fn is_s4(&self) -> bool {
        self.kind == GroupKind::Symmetric4
    }

    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn generator(&self, symbol: char) -> Result<usize> {
        let slot = match symbol {
            'x' => 0,
            'y' => 1,
            other => return Err(Error::MissingGenerator(other)),
        };
        self.generators
            .get(slot)
            .copied()
            .ok_or(Error::MissingGenerator(symbol))
    }

    /// `g^e` for any integer exponent.
    pub fn pow(&self, g: usize, e: i64) -> usize {
        let ord = self.element_order(g) as i64;
        let mut e = e.rem_euclid(ord);
        let mut acc = self.identity;
        while e > 0 {
            acc = self.op(acc, g);
            e -= 1;
        }
        acc
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut k = 1;
        let mut h = g;
        while h != self.identity {
            h = self.op(h, g);
            k += 1;
        }
        k
    }

    pub fn index_of_name(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Evaluates a generator word to an element index.
    pub fn word_to_element(&self, w: &GenWord) -> Result<usize> {
        let mut acc = self.identity;
        for &(gen, e) in &w.letters {
            let g = self.generator(gen.symbol())?;
            acc = self.op(acc, self.pow(g, e));
        }
        Ok(acc)
    }

    /// Checks associativity, two-sided identity, and inverses exhaustively.
    pub fn check_laws(&self) -> bool {
        let n = self.order;
        let e = self.identity;
        for a in 0..n {
            if self.op(a, e) != a || self.op(e, a) != a {
                return false;
            }
            if self.op(a, self.inv[a]) != e || self.op(self.inv[a], a) != e {
                return false;
            }
            for b in 0..n {
                let ab = self.op(a, b);
                for c in 0..n {
                    if self.op(ab, c) != self.op(a, self.op(b, c)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn from_table(
        kind: GroupKind,
        mul: Vec<Vec<usize>>,
        identity: usize,
        names: Vec<String>,
        generators: Vec<usize>,
    ) -> GroupTable {
        let order = mul.len();
        let inv = (0..order)
            .map(|a| {
                (0..order)
                    .find(|&b| mul[a][b] == identity)
                    .expect("every element of a finite group has an inverse")
            })
            .collect();
        GroupTable {
            kind,
            order,
            mul,
            inv,
            identity,
            names,
            generators,
        }
    }
}

/// Builds the Cayley table for a group kind.
pub fn build_group(kind: GroupKind) -> Result<GroupTable> {
    match kind {
        GroupKind::Cyclic(n) => {
            if n == 0 || n > MAX_ORDER {
                return Err(Error::InvalidSize(format!("cyclic group of order {n}")));
            }
            let mul = (0..n)
                .map(|i| (0..n).map(|j| (i + j) % n).collect())
                .collect();
            let names = (0..n).map(|i| power_name("x", i)).collect();
            let generators = if n > 1 { vec![1] } else { vec![0] };
            Ok(GroupTable::from_table(kind, mul, 0, names, generators))
        }
        GroupKind::Klein => {
            let mul = (0..4).map(|i| (0..4).map(|j| i ^ j).collect()).collect();
            let names = ["1", "x", "y", "xy"]
                .iter()
                .map(|s| s.to_string())
                .collect();
            Ok(GroupTable::from_table(kind, mul, 0, names, vec![1, 2]))
        }
        GroupKind::Dihedral(order) => {
            if order < 4 || order % 2 != 0 || order > MAX_ORDER {
                return Err(Error::InvalidSize(format!(
                    "dihedral group of order {order}"
                )));
            }
            let n = order / 2;
            // index f*n + i stands for r^i s^f; (r^i s^a)(r^j s^b) = r^(i ± j) s^(a+b)
            let mul = (0..order)
                .map(|p| {
                    let (a, i) = (p / n, p % n);
                    (0..order)
                        .map(|q| {
                            let (b, j) = (q / n, q % n);
                            let rot = if a == 0 { (i + j) % n } else { (i + n - j) % n };
                            ((a + b) % 2) * n + rot
                        })
                        .collect()
                })
                .collect();
            let names = (0..order)
                .map(|p| {
                    let r = power_name("x", p % n);
                    match (p / n, p % n) {
                        (0, _) => r,
                        (_, 0) => "y".to_string(),
                        _ => format!("{r}y"),
                    }
                })
                .collect();
            Ok(GroupTable::from_table(kind, mul, 0, names, vec![1, n]))
        }
        GroupKind::Alternating4 => {
            let perms: Vec<Perm4> = S4_CYCLES[..12]
                .iter()
                .map(|c| Perm4::from_cycles(c))
                .collect();
            Ok(perm_group(kind, &perms, S4_CYCLES[..12].iter(), vec![7, 3]))
        }
        GroupKind::Symmetric4 => {
            let perms: Vec<Perm4> = S4_CYCLES.iter().map(|c| Perm4::from_cycles(c)).collect();
            Ok(perm_group(
                kind,
                &perms,
                S4_CYCLES.iter(),
                vec![S4_ALPHA, S4_BETA],
            ))
        }
    }
}

fn power_name(sym: &str, i: usize) -> String {
    match i {
        0 => "1".to_string(),
        1 => sym.to_string(),
        _ => format!("{sym}^{i}"),
    }
}

fn perm_group<'a>(
    kind: GroupKind,
    perms: &[Perm4],
    names: impl Iterator<Item = &'a &'a str>,
    generators: Vec<usize>,
) -> GroupTable {
    let index = |p: &Perm4| {
        perms
            .iter()
            .position(|q| q == p)
            .expect("permutation list is closed under composition")
    };
    let mul = perms
        .iter()
        .map(|p| perms.iter().map(|q| index(&p.compose(q))).collect())
        .collect();
    let names = names.map(|s| s.to_string()).collect();
    GroupTable::from_table(kind, mul, 0, names, generators)
}

/// A permutation of `{1, 2, 3, 4}` stored as 0-based images.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Perm4(pub [u8; 4]);

impl Perm4 {
    pub const IDENTITY: Perm4 = Perm4([0, 1, 2, 3]);

    /// Parses cycle notation such as `(13)(24)`; `1` is the identity.
    pub fn from_cycles(s: &str) -> Perm4 {
        let mut img = [0u8, 1, 2, 3];
        for cycle in s.split(['(', ')']).filter(|c| !c.is_empty() && *c != "1") {
            let pts: Vec<u8> = cycle.bytes().map(|b| b - b'1').collect();
            for (k, &p) in pts.iter().enumerate() {
                img[p as usize] = pts[(k + 1) % pts.len()];
            }
        }
        Perm4(img)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm4) -> Perm4 {
        let mut img = [0u8; 4];
        for (i, slot) in img.iter_mut().enumerate() {
            *slot = self.0[other.0[i] as usize];
        }
        Perm4(img)
    }

    pub fn is_even(&self) -> bool {
        let mut inversions = 0;
        for i in 0..4 {
            for j in i + 1..4 {
                if self.0[i] > self.0[j] {
                    inversions += 1;
                }
            }
        }
        inversions % 2 == 0
    }

    pub fn to_cycles(&self) -> String {
        let mut seen = [false; 4];
        let mut out = String::new();
        for start in 0..4 {
            if seen[start] || self.0[start] as usize == start {
                continue;
            }
            out.push('(');
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                out.push((b'1' + i as u8) as char);
                i = self.0[i] as usize;
            }
            out.push(')');
        }
        if out.is_empty() {
            out.push('1');
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Gen {
    X,
    Y,
}

impl Gen {
    pub fn symbol(self) -> char {
        match self {
            Gen::X => 'x',
            Gen::Y => 'y',
        }
    }
}

/// A word in the generators `x` and `y` with integer exponents.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GenWord {
    pub letters: Vec<(Gen, i64)>,
}

impl GenWord {
    /// Merges adjacent equal letters and reduces exponents mod 4 for `x`
    /// and mod 2 for `y` (the S4 generator orders), dropping trivial letters.
    pub fn normalized(&self) -> GenWord {
        let mut out: Vec<(Gen, i64)> = Vec::new();
        for &(g, e) in &self.letters {
            let modulus = match g {
                Gen::X => 4,
                Gen::Y => 2,
            };
            match out.last_mut() {
                Some((last, acc)) if *last == g => *acc = (*acc + e).rem_euclid(modulus),
                _ => out.push((g, e.rem_euclid(modulus))),
            }
            if out.last().is_some_and(|&(_, e)| e == 0) {
                out.pop();
            }
        }
        GenWord { letters: out }
    }
}

impl FromStr for GenWord {
    type Err = Error;

    /// Parses words like `x^3 y x^3`, `xy`, `x*y^-1`, or `1`.
    fn from_str(s: &str) -> Result<Self> {
        let bytes = s.as_bytes();
        let mut letters = Vec::new();
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i] as char;
            match c {
                ' ' | '\t' | '*' | '1' => i += 1,
                'x' | 'y' => {
                    let gen = if c == 'x' { Gen::X } else { Gen::Y };
                    i += 1;
                    let mut exp = 1i64;
                    if i < bytes.len() && bytes[i] == b'^' {
                        i += 1;
                        let start = i;
                        if i < bytes.len() && bytes[i] == b'-' {
                            i += 1;
                        }
                        while i < bytes.len() && bytes[i].is_ascii_digit() {
                            i += 1;
                        }
                        exp = s[start..i].parse().map_err(|_| Error::Syntax {
                            pos: start,
                            msg: "expected integer exponent".into(),
                        })?;
                    }
                    letters.push((gen, exp));
                }
                _ => {
                    return Err(Error::Syntax {
                        pos: i,
                        msg: format!("unexpected character `{c}` in word"),
                    })
                }
            }
        }
        Ok(GenWord { letters })
    }
}
