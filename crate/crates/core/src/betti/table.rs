use std::collections::BTreeMap;
use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Graded Betti numbers `β_{i,j}` of a squarefree monomial ideal, stored
/// sparsely for `i ≥ 0`.
///
/// Every table also carries the convention `β_{-1,0} = 1`, which is what the
/// zero ideal (empty complex) reduces to. [`BettiTable::get`] reports it.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BettiTable {
    entries: BTreeMap<(usize, usize), u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiEntry {
    pub i: usize,
    pub j: usize,
    pub value: u64,
}

/// `literal` is `max(j - i)`; `diagram` is one less, the value read off a
/// Betti diagram (the regularity of the quotient ring).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Regularity {
    pub literal: usize,
    pub diagram: usize,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum RowConvention {
    /// Row `r = j - i - 1`: degree-2 generators sit in row 1.
    #[default]
    Quotient,
    /// Row `r = j - i`.
    Literal,
}

impl BettiTable {
    /// The zero ideal.
    pub fn zero() -> Self {
        Self::default()
    }

    /// The principal ideal generated by one squarefree monomial of degree `d`.
    pub fn single(d: usize) -> Self {
        let mut t = Self::zero();
        t.add(0, d, 1);
        t
    }

    pub fn from_entries<I: IntoIterator<Item = BettiEntry>>(entries: I) -> Self {
        let mut t = Self::zero();
        for e in entries {
            t.add(e.i, e.j, e.value);
        }
        t
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn add(&mut self, i: usize, j: usize, value: u64) {
        if value > 0 {
            *self.entries.entry((i, j)).or_insert(0) += value;
        }
    }

    /// `β_{i,j}`, including `β_{-1,0} = 1`.
    pub fn get(&self, i: isize, j: usize) -> u64 {
        match i {
            -1 => u64::from(j == 0),
            i if i < -1 => 0,
            i => self.entries.get(&(i as usize, j)).copied().unwrap_or(0),
        }
    }

    /// Nonzero entries with `i ≥ 0`, ordered by `(i, j)`.
    pub fn entries(&self) -> impl Iterator<Item = BettiEntry> + '_ {
        self.entries.iter().map(|(&(i, j), &value)| BettiEntry { i, j, value })
    }

    /// Entries with the `(-1, 0)` convention entry prepended.
    pub(crate) fn extended(&self) -> impl Iterator<Item = (isize, usize, u64)> + '_ {
        std::iter::once((-1, 0, 1)).chain(self.entries.iter().map(|(&(i, j), &v)| (i as isize, j, v)))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `β_{i,*}` as a map from `j` to the value.
    pub fn row(&self, i: usize) -> BTreeMap<usize, u64> {
        self.entries.range((i, 0)..(i + 1, 0)).map(|(&(_, j), &v)| (j, v)).collect()
    }

    pub fn projdim(&self) -> Result<usize> {
        self.entries.keys().map(|&(i, _)| i).max().ok_or(Error::ZeroIdeal)
    }

    pub fn reg(&self) -> Result<Regularity> {
        let literal = self.entries.keys().map(|&(i, j)| j - i).max().ok_or(Error::ZeroIdeal)?;
        Ok(Regularity { literal, diagram: literal - 1 })
    }
}

pub fn projdim(t: &BettiTable) -> Result<usize> {
    t.projdim()
}

pub fn reg(t: &BettiTable) -> Result<Regularity> {
    t.reg()
}

/// Betti diagram: column `i` is the homological degree of the ideal, row `r`
/// holds `β_{i, i+r+1}` (or `β_{i, i+r}` with [`RowConvention::Literal`]).
/// Zeros print as dots; the zero ideal renders as an empty string.
pub fn betti_diagram(t: &BettiTable, rows: RowConvention) -> String {
    if t.is_zero_ideal() {
        return String::new();
    }
    let shift = match rows {
        RowConvention::Quotient => 1,
        RowConvention::Literal => 0,
    };
    let row_of = |i: usize, j: usize| j - i - shift;
    let cols = t.projdim().expect("nonzero");
    let rmin = t.entries().map(|e| row_of(e.i, e.j)).min().expect("nonzero");
    let rmax = t.entries().map(|e| row_of(e.i, e.j)).max().expect("nonzero");

    let cell = |i: usize, r: usize| match t.get(i as isize, i + r + shift) {
        0 => ".".to_owned(),
        v => v.to_string(),
    };
    let width = (0..=cols)
        .flat_map(|i| (rmin..=rmax).map(move |r| (i, r)))
        .map(|(i, r)| cell(i, r).len())
        .chain(std::iter::once(cols.to_string().len()))
        .max()
        .unwrap_or(1);
    let label = rmax.to_string().len() + 1;

    let mut out = String::new();
    write!(out, "{:label$}", "").unwrap();
    for i in 0..=cols {
        write!(out, " {i:>width$}").unwrap();
    }
    out.push('\n');
    for r in rmin..=rmax {
        write!(out, "{:>label$}", format!("{r}:")).unwrap();
        for i in 0..=cols {
            write!(out, " {:>width$}", cell(i, r)).unwrap();
        }
        out.push('\n');
    }
    out
}

impl Serialize for BettiTable {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.entries())
    }
}

impl<'de> Deserialize<'de> for BettiTable {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        Vec::<BettiEntry>::deserialize(deserializer).map(BettiTable::from_entries)
    }
}
