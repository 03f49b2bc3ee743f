//! Linear algebra over `F_p`: packed vectors (bit-packed for `p = 2`), an
//! incremental echelon basis with payload tags, and dense helpers for the
//! small matrices that carry module actions.

use super::Matrix;

pub fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p));
    let (mut r, mut b, mut e) = (1u64, a as u64 % p as u64, p as u64 - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    r as u32
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FpVector {
    Two { len: usize, words: Vec<u64> },
    Odd { p: u32, data: Vec<u8> },
}

impl FpVector {
    pub fn zeros(p: u32, len: usize) -> Self {
        if p == 2 {
            FpVector::Two { len, words: vec![0; len.div_ceil(64)] }
        } else {
            assert!(p < 256, "prime too large for byte storage");
            FpVector::Odd { p, data: vec![0; len] }
        }
    }

    pub fn from_i64(p: u32, v: &[i64]) -> Self {
        let mut out = Self::zeros(p, v.len());
        for (i, &x) in v.iter().enumerate() {
            let r = x.rem_euclid(p as i64) as u32;
            if r != 0 {
                out.set(i, r);
            }
        }
        out
    }

    pub fn unit(p: u32, len: usize, i: usize) -> Self {
        let mut v = Self::zeros(p, len);
        v.set(i, 1);
        v
    }

    pub fn p(&self) -> u32 {
        match self {
            FpVector::Two { .. } => 2,
            FpVector::Odd { p, .. } => *p,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            FpVector::Two { len, .. } => *len,
            FpVector::Odd { data, .. } => data.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> u32 {
        match self {
            FpVector::Two { words, .. } => ((words[i / 64] >> (i % 64)) & 1) as u32,
            FpVector::Odd { data, .. } => data[i] as u32,
        }
    }

    #[inline]
    pub fn set(&mut self, i: usize, v: u32) {
        match self {
            FpVector::Two { words, .. } => {
                let bit = 1u64 << (i % 64);
                if v & 1 == 1 {
                    words[i / 64] |= bit;
                } else {
                    words[i / 64] &= !bit;
                }
            }
            FpVector::Odd { p, data } => data[i] = (v % *p) as u8,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FpVector::Two { words, .. } => words.iter().all(|&w| w == 0),
            FpVector::Odd { data, .. } => data.iter().all(|&x| x == 0),
        }
    }

    pub fn first_nonzero_from(&self, start: usize) -> Option<usize> {
        match self {
            FpVector::Two { len, words } => {
                if start >= *len {
                    return None;
                }
                let mut w = start / 64;
                let mut cur = words[w] & (!0u64 << (start % 64));
                loop {
                    if cur != 0 {
                        let i = w * 64 + cur.trailing_zeros() as usize;
                        return (i < *len).then_some(i);
                    }
                    w += 1;
                    if w >= words.len() {
                        return None;
                    }
                    cur = words[w];
                }
            }
            FpVector::Odd { data, .. } => (start..data.len()).find(|&i| data[i] != 0),
        }
    }

    /// `self += c·other`
    pub fn axpy(&mut self, c: u32, other: &FpVector) {
        match (self, other) {
            (FpVector::Two { words, .. }, FpVector::Two { words: o, .. }) => {
                if c & 1 == 1 {
                    for (a, b) in words.iter_mut().zip(o) {
                        *a ^= b;
                    }
                }
            }
            (FpVector::Odd { p, data }, FpVector::Odd { data: o, .. }) => {
                let p = *p;
                let c = c % p;
                if c == 0 {
                    return;
                }
                for (a, &b) in data.iter_mut().zip(o) {
                    if b != 0 {
                        *a = ((*a as u32 + c * b as u32) % p) as u8;
                    }
                }
            }
            _ => panic!("mixed characteristic vectors"),
        }
    }

    pub fn scale(&mut self, c: u32) {
        match self {
            FpVector::Two { words, .. } => {
                if c & 1 == 0 {
                    words.iter_mut().for_each(|w| *w = 0);
                }
            }
            FpVector::Odd { p, data } => {
                let p = *p;
                for a in data.iter_mut() {
                    *a = ((*a as u32 * (c % p)) % p) as u8;
                }
            }
        }
    }

    pub fn to_i64(&self) -> Vec<i64> {
        (0..self.len()).map(|i| self.get(i) as i64).collect()
    }

    pub fn count_nonzero(&self) -> usize {
        match self {
            FpVector::Two { words, .. } => words.iter().map(|w| w.count_ones() as usize).sum(),
            FpVector::Odd { data, .. } => data.iter().filter(|&&x| x != 0).count(),
        }
    }
}

/// Incrementally built row-echelon basis. Each row carries a tag vector
/// recording which inserted vectors it combines.
#[derive(Clone, Debug)]
pub struct Echelon {
    p: u32,
    len: usize,
    tag_len: usize,
    rows: Vec<(FpVector, FpVector)>,
    pivot_row: Vec<Option<usize>>,
}

impl Echelon {
    pub fn new(p: u32, len: usize) -> Self {
        Self::with_tags(p, len, 0)
    }

    pub fn with_tags(p: u32, len: usize, tag_len: usize) -> Self {
        Echelon { p, len, tag_len, rows: Vec::new(), pivot_row: vec![None; len] }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_len(&self) -> usize {
        self.len
    }

    /// Reduce in place; returns the first position that no pivot can clear.
    fn reduce_in_place(&self, v: &mut FpVector, tag: &mut FpVector) -> Option<usize> {
        let mut pos = 0;
        while let Some(i) = v.first_nonzero_from(pos) {
            match self.pivot_row[i] {
                Some(r) => {
                    let c = self.p - v.get(i);
                    let (row, rtag) = &self.rows[r];
                    v.axpy(c, row);
                    if self.tag_len > 0 {
                        tag.axpy(c, rtag);
                    }
                    pos = i + 1;
                }
                None => return Some(i),
            }
        }
        None
    }

    pub fn contains(&self, v: &FpVector) -> bool {
        let mut v = v.clone();
        let mut t = FpVector::zeros(self.p, self.tag_len);
        self.reduce_in_place(&mut v, &mut t).is_none()
    }

    /// Insert a vector; returns whether it was independent.
    pub fn insert(&mut self, v: FpVector) -> bool {
        let tag = FpVector::zeros(self.p, self.tag_len);
        self.insert_tagged(v, tag)
    }

    pub fn insert_tagged(&mut self, v: FpVector, tag: FpVector) -> bool {
        assert_eq!(v.len(), self.len);
        self.insert_or_relation(v, tag).is_none()
    }

    /// Insert a vector; when it is dependent, return the reduced tag, which
    /// then encodes a linear relation among the tagged inputs.
    pub fn insert_or_relation(&mut self, mut v: FpVector, mut tag: FpVector) -> Option<FpVector> {
        match self.reduce_in_place(&mut v, &mut tag) {
            None => Some(tag),
            Some(i) => {
                let inv = inv_mod(v.get(i), self.p);
                v.scale(inv);
                tag.scale(inv);
                self.pivot_row[i] = Some(self.rows.len());
                self.rows.push((v, tag));
                None
            }
        }
    }

    /// Tag combination `t` with `v = Σ t_k · (tagged input k)` modulo
    /// untagged rows, when `v` lies in the span.
    pub fn express(&self, v: &FpVector) -> Option<FpVector> {
        let mut v = v.clone();
        let mut t = FpVector::zeros(self.p, self.tag_len);
        if self.reduce_in_place(&mut v, &mut t).is_some() {
            return None;
        }
        // v - Σ t·rows = 0 was reached by subtracting, so the coefficients are -t.
        t.scale(self.p - 1);
        Some(t)
    }
}

fn rref(a: &Matrix, p: u32) -> (Vec<Vec<i64>>, Vec<usize>) {
    let pm = p as i64;
    let mut m: Vec<Vec<i64>> = a.to_rows().into_iter().map(|r| r.into_iter().map(|x| x.rem_euclid(pm)).collect()).collect();
    let (rows, cols) = (a.rows(), a.cols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(s) = (r..rows).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, s);
        let inv = inv_mod(m[r][c] as u32, p) as i64;
        for x in m[r].iter_mut() {
            *x = *x * inv % pm;
        }
        for i in 0..rows {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                for j in 0..cols {
                    m[i][j] = (m[i][j] - f * m[r][j]).rem_euclid(pm);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    (m, pivots)
}

pub fn rank_mod(a: &Matrix, p: u32) -> usize {
    rref(a, p).1.len()
}

/// Basis (as columns) of the nullspace of `a` over `F_p`.
pub fn nullspace_mod(a: &Matrix, p: u32) -> Matrix {
    let (m, pivots) = rref(a, p);
    let cols = a.cols();
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let mut out = Matrix::zeros(cols, free.len());
    for (k, &f) in free.iter().enumerate() {
        out[(f, k)] = 1;
        for (r, &pc) in pivots.iter().enumerate() {
            out[(pc, k)] = (-m[r][f]).rem_euclid(p as i64);
        }
    }
    out
}

/// Solution `X` of `b·X = y` over `F_p`, if one exists.
pub fn solve_mod(b: &Matrix, y: &Matrix, p: u32) -> Option<Matrix> {
    let aug = b.hstack(y);
    let (m, pivots) = rref(&aug, p);
    if pivots.iter().any(|&c| c >= b.cols()) {
        return None;
    }
    let mut x = Matrix::zeros(b.cols(), y.cols());
    for (r, &pc) in pivots.iter().enumerate() {
        for j in 0..y.cols() {
            x[(pc, j)] = m[r][b.cols() + j];
        }
    }
    Some(x)
}

/// Column indices of a maximal independent subset, chosen greedily left to right.
pub fn independent_columns(a: &Matrix, p: u32) -> Vec<usize> {
    rref(a, p).1
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn inverse_mod() {
        for p in [2u32, 3, 5, 7] {
            for a in 1..p {
                assert_eq!(a * inv_mod(a, p) % p, 1);
            }
        }
    }

    #[test]
    fn packed_first_nonzero() {
        let mut v = FpVector::zeros(2, 200);
        v.set(130, 1);
        v.set(3, 1);
        assert_eq!(v.first_nonzero_from(0), Some(3));
        assert_eq!(v.first_nonzero_from(4), Some(130));
        assert_eq!(v.first_nonzero_from(131), None);
    }

    #[test]
    fn express_recovers_combination() {
        let mut e = Echelon::with_tags(3, 3, 2);
        e.insert(FpVector::from_i64(3, &[1, 0, 0]));
        e.insert_tagged(FpVector::from_i64(3, &[0, 1, 1]), FpVector::unit(3, 2, 0));
        e.insert_tagged(FpVector::from_i64(3, &[0, 0, 1]), FpVector::unit(3, 2, 1));
        // [2, 2, 1] = 2·e0 + 2·(0,1,1) + 2·(0,0,1)
        let t = e.express(&FpVector::from_i64(3, &[2, 2, 1])).unwrap();
        assert_eq!(t.to_i64(), vec![2, 2]);
    }

    proptest! {
        #[test]
        fn nullspace_is_kernel(entries in proptest::collection::vec(0i64..5, 20), p in prop_oneof![Just(2u32), Just(3), Just(5)]) {
            let a = Matrix::from_rows(&[entries[0..5].to_vec(), entries[5..10].to_vec(), entries[10..15].to_vec(), entries[15..20].to_vec()]).reduce(Some(p as u64));
            let n = nullspace_mod(&a, p);
            prop_assert_eq!(n.cols() + rank_mod(&a, p), 5);
            prop_assert!(a.mul(&n).reduce(Some(p as u64)).is_zero());
            let mut e = Echelon::new(p, 5);
            for i in 0..4 { e.insert(FpVector::from_i64(p, a.row(i))); }
            prop_assert_eq!(e.rank(), rank_mod(&a, p));
        }
    }
}
