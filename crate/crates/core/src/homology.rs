//! Reduced simplicial homology ranks over the rationals, computed from exact
//! integer ranks of boundary matrices.
//!
//! Ranks are found by fraction-free sparse elimination. Rows are kept
//! primitive (divided by the gcd of their entries), which keeps simplicial
//! boundary matrices tiny in practice; every operation is checked, and on
//! overflow the elimination restarts over arbitrary-precision integers.

use std::collections::{BTreeMap, HashMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// An abstract simplicial complex on vertices `0..64`, stored as its full
/// downward-closed face list. The void complex has no faces at all; the
/// complex `{∅}` has exactly the empty face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbstractComplex {
    faces: Vec<u64>,
}

impl AbstractComplex {
    pub fn void() -> Self {
        AbstractComplex { faces: Vec::new() }
    }

    /// The complex generated by `facets` (all their subsets).
    pub fn from_facets<I: IntoIterator<Item = u64>>(facets: I) -> Self {
        let mut seen = HashSet::new();
        for f in facets {
            let mut s = f;
            loop {
                seen.insert(s);
                if s == 0 {
                    break;
                }
                s = (s - 1) & f;
            }
        }
        Self::from_faces_unchecked(seen.into_iter().collect())
    }

    /// Wraps a face list that is already closed under taking subsets.
    pub fn from_faces(faces: Vec<u64>) -> Option<Self> {
        let set: HashSet<u64> = faces.iter().copied().collect();
        let closed = faces.iter().all(|&f| {
            let mut bits = f;
            while bits != 0 {
                let low = bits & bits.wrapping_neg();
                if !set.contains(&(f & !low)) {
                    return false;
                }
                bits &= bits - 1;
            }
            true
        });
        closed.then(|| Self::from_faces_unchecked(set.into_iter().collect()))
    }

    fn from_faces_unchecked(mut faces: Vec<u64>) -> Self {
        faces.sort_by_key(|&f| (f.count_ones(), f));
        faces.dedup();
        AbstractComplex { faces }
    }

    pub fn faces(&self) -> &[u64] {
        &self.faces
    }

    pub fn is_void(&self) -> bool {
        self.faces.is_empty()
    }

    /// Maximal faces.
    pub fn facets(&self) -> Vec<u64> {
        self.faces.iter().copied().filter(|&f| !self.faces.iter().any(|&g| g != f && g & f == f)).collect()
    }

    /// `f[d + 1]` is the number of faces of dimension `d` (so `f[0]` counts
    /// the empty face).
    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = Vec::new();
        for &face in &self.faces {
            let k = face.count_ones() as usize;
            if f.len() <= k {
                f.resize(k + 1, 0);
            }
            f[k] += 1;
        }
        f
    }

    /// Reduced Euler characteristic `Σ_d (-1)^d f_d`, with `f_{-1}` counting
    /// the empty face.
    pub fn reduced_euler_characteristic(&self) -> i64 {
        self.f_vector().iter().enumerate().map(|(k, &n)| if k % 2 == 1 { n as i64 } else { -(n as i64) }).sum()
    }
}

/// Ranks of reduced homology `H̃_d` for `d ≥ -1`, zero entries omitted.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HomologyProfile {
    pub ranks: BTreeMap<isize, usize>,
}

impl HomologyProfile {
    pub fn rank(&self, d: isize) -> usize {
        self.ranks.get(&d).copied().unwrap_or(0)
    }
}

pub fn reduced_homology_ranks(k: &AbstractComplex) -> HomologyProfile {
    if k.is_void() {
        return HomologyProfile::default();
    }
    // faces grouped by size; size s means dimension s - 1
    let mut by_size: Vec<Vec<u64>> = Vec::new();
    for &f in k.faces() {
        let s = f.count_ones() as usize;
        if by_size.len() <= s {
            by_size.resize(s + 1, Vec::new());
        }
        by_size[s].push(f);
    }
    // rank of the boundary from size s to size s - 1
    let mut boundary_rank = vec![0usize; by_size.len() + 1];
    for s in 1..by_size.len() {
        boundary_rank[s] = rank(&boundary_matrix(&by_size[s], &by_size[s - 1]));
    }
    let mut ranks = BTreeMap::new();
    for s in 0..by_size.len() {
        let h = by_size[s].len() - boundary_rank[s] - boundary_rank[s + 1];
        if h > 0 {
            ranks.insert(s as isize - 1, h);
        }
    }
    HomologyProfile { ranks }
}

/// Columns are `higher` faces, rows are `lower` faces; stored as sparse
/// columns with the usual alternating signs.
fn boundary_matrix(higher: &[u64], lower: &[u64]) -> Vec<Vec<(usize, i64)>> {
    let index: HashMap<u64, usize> = lower.iter().enumerate().map(|(k, &f)| (f, k)).collect();
    higher
        .iter()
        .map(|&f| {
            let mut col = Vec::with_capacity(f.count_ones() as usize);
            let mut bits = f;
            let mut sign = 1;
            while bits != 0 {
                let low = bits & bits.wrapping_neg();
                col.push((index[&(f & !low)], sign));
                sign = -sign;
                bits &= bits - 1;
            }
            col.sort_unstable();
            col
        })
        .collect()
}

/// Exact rank over the rationals of a matrix given as sparse vectors.
pub fn rank(vectors: &[Vec<(usize, i64)>]) -> usize {
    match eliminate::<i64>(vectors) {
        Some(r) => r,
        None => eliminate::<BigInt>(vectors).expect("big integers do not overflow"),
    }
}

trait Exact: Clone + PartialEq + Sized {
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn abs_cmp_key(&self) -> u128;
    fn mul_sub(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self>;
    fn gcd(&self, other: &Self) -> Self;
    fn div_exact(&self, d: &Self) -> Self;
    fn is_one(&self) -> bool;
}

impl Exact for i64 {
    fn from_i64(v: i64) -> Self {
        v
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn abs_cmp_key(&self) -> u128 {
        self.unsigned_abs() as u128
    }
    fn mul_sub(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        // i64::MIN has no absolute value; treat it as overflow too
        a.checked_mul(*x)?.checked_sub(b.checked_mul(*y)?).filter(|&v| v != i64::MIN)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, d: &Self) -> Self {
        self / d
    }
    fn is_one(&self) -> bool {
        *self == 1
    }
}

impl Exact for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn abs_cmp_key(&self) -> u128 {
        let bits = self.bits();
        if bits >= 128 {
            u128::MAX
        } else {
            let (_, digits) = self.abs().to_u64_digits();
            digits.iter().rev().fold(0u128, |acc, &d| (acc << 64) | d as u128)
        }
    }
    fn mul_sub(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        Some(a * x - b * y)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, d: &Self) -> Self {
        self / d
    }
    fn is_one(&self) -> bool {
        One::is_one(&self.abs())
    }
}

type SparseRow<T> = Vec<(usize, T)>;

/// Gaussian elimination keeping integer entries. Returns `None` on overflow.
fn eliminate<T: Exact>(vectors: &[Vec<(usize, i64)>]) -> Option<usize> {
    let mut rows: Vec<SparseRow<T>> = vectors
        .iter()
        .map(|v| v.iter().filter(|e| e.1 != 0).map(|&(c, x)| (c, T::from_i64(x))).collect::<Vec<_>>())
        .filter(|r: &SparseRow<T>| !r.is_empty())
        .collect();
    // pivot rows keyed by leading column
    let mut pivots: BTreeMap<usize, SparseRow<T>> = BTreeMap::new();
    let mut rank = 0;
    while let Some(mut row) = rows.pop() {
        while let Some(&(lead, _)) = row.first() {
            match pivots.get(&lead) {
                None => {
                    make_primitive(&mut row);
                    pivots.insert(lead, row);
                    rank += 1;
                    break;
                }
                Some(p) => {
                    // keep the smaller leading entry as the pivot
                    if row[0].1.abs_cmp_key() < p[0].1.abs_cmp_key() {
                        let old = pivots.insert(lead, row).expect("present");
                        row = old;
                    }
                    let p = &pivots[&lead];
                    row = combine(&row, p)?;
                    make_primitive(&mut row);
                }
            }
        }
    }
    Some(rank)
}

/// `p₀·row − r₀·p`, which clears the leading column.
fn combine<T: Exact>(row: &SparseRow<T>, p: &SparseRow<T>) -> Option<SparseRow<T>> {
    let a = &p[0].1;
    let b = &row[0].1;
    let zero = T::from_i64(0);
    let mut out = Vec::with_capacity(row.len() + p.len());
    let (mut x, mut y) = (1, 1);
    while x < row.len() || y < p.len() {
        let (col, value) = match (row.get(x), p.get(y)) {
            (Some(rx), Some(py)) if rx.0 == py.0 => {
                x += 1;
                y += 1;
                (rx.0, T::mul_sub(a, &rx.1, b, &py.1)?)
            }
            (Some(rx), Some(py)) if rx.0 > py.0 => {
                y += 1;
                (py.0, T::mul_sub(a, &zero, b, &py.1)?)
            }
            (Some(rx), _) => {
                x += 1;
                (rx.0, T::mul_sub(a, &rx.1, b, &zero)?)
            }
            (None, Some(py)) => {
                y += 1;
                (py.0, T::mul_sub(a, &zero, b, &py.1)?)
            }
            (None, None) => unreachable!(),
        };
        if !value.is_zero() {
            out.push((col, value));
        }
    }
    Some(out)
}

fn make_primitive<T: Exact>(row: &mut SparseRow<T>) {
    let Some(first) = row.first() else { return };
    let mut g = first.1.clone();
    for (_, v) in row.iter().skip(1) {
        if g.is_one() {
            return;
        }
        g = g.gcd(v);
    }
    if g.is_one() || g.is_zero() {
        return;
    }
    for (_, v) in row.iter_mut() {
        *v = v.div_exact(&g);
    }
}
