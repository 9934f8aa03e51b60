//! Row echelon over GF(2^m) with rows stored as `m` bit-planes.
//!
//! Entry `j` of a row is the element whose coefficient `k` is bit `j` of
//! plane `k`, which is the packed index of [`Elem`] for p = 2. A scaled
//! row update is a handful of word-wise XORs per plane pair.

use crate::gfq::{Elem, FieldSpec};

use super::Echelon;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct PackedRow {
    words: Vec<u64>,
}

pub struct BitSlicedEchelon {
    field: FieldSpec,
    cols: usize,
    m: usize,
    wpp: usize,
    /// `scaled[c][k]` = bitmask of the element `c · x^k`.
    scaled: Vec<Vec<u32>>,
    pivot_of_col: Vec<Option<u32>>,
    rows: Vec<(usize, PackedRow)>,
}

impl BitSlicedEchelon {
    pub fn new(field: &FieldSpec, cols: usize) -> Self {
        assert_eq!(
            field.p(),
            2,
            "bit-sliced elimination needs characteristic 2"
        );
        let m = field.m() as usize;
        let scaled = field
            .elements()
            .map(|c| {
                (0..m)
                    .map(|k| field.mul(c, Elem::from_index(1 << k)).index() as u32)
                    .collect()
            })
            .collect();
        BitSlicedEchelon {
            field: field.clone(),
            cols,
            m,
            wpp: cols.div_ceil(64),
            scaled,
            pivot_of_col: vec![None; cols],
            rows: Vec::new(),
        }
    }

    pub(crate) fn pack(&self, row: &[Elem]) -> PackedRow {
        let mut words = vec![0u64; self.m * self.wpp];
        for (j, e) in row.iter().enumerate() {
            let mut bits = e.index();
            let mut k = 0;
            while bits != 0 {
                if bits & 1 == 1 {
                    words[k * self.wpp + j / 64] |= 1 << (j % 64);
                }
                bits >>= 1;
                k += 1;
            }
        }
        PackedRow { words }
    }

    fn unpack(&self, row: &PackedRow) -> Vec<Elem> {
        (0..self.cols).map(|j| self.get(row, j)).collect()
    }

    #[inline]
    fn get(&self, row: &PackedRow, j: usize) -> Elem {
        let (w, b) = (j / 64, j % 64);
        let mut idx = 0usize;
        for k in 0..self.m {
            idx |= (((row.words[k * self.wpp + w] >> b) & 1) as usize) << k;
        }
        Elem::from_index(idx)
    }

    /// First nonzero column at or after `from`.
    fn first_nonzero(&self, row: &PackedRow, from: usize) -> Option<usize> {
        let mut w = from / 64;
        let mut mask = !0u64 << (from % 64);
        while w < self.wpp {
            let mut any = 0u64;
            for k in 0..self.m {
                any |= row.words[k * self.wpp + w];
            }
            any &= mask;
            if any != 0 {
                let j = w * 64 + any.trailing_zeros() as usize;
                return (j < self.cols).then_some(j);
            }
            mask = !0;
            w += 1;
        }
        None
    }

    /// `target += c · src`, touching words from `start_word` on.
    fn axpy(&self, target: &mut PackedRow, src: &PackedRow, c: Elem, start_word: usize) {
        let wpp = self.wpp;
        for (k, &mask) in self.scaled[c.index()].iter().enumerate() {
            let s = &src.words[k * wpp..(k + 1) * wpp];
            let mut bits = mask;
            let mut j = 0;
            while bits != 0 {
                if bits & 1 == 1 {
                    let t = &mut target.words[j * wpp..(j + 1) * wpp];
                    for w in start_word..wpp {
                        t[w] ^= s[w];
                    }
                }
                bits >>= 1;
                j += 1;
            }
        }
    }

    fn scale(&self, row: &PackedRow, c: Elem) -> PackedRow {
        let mut out = PackedRow {
            words: vec![0; row.words.len()],
        };
        self.axpy(&mut out, row, c, 0);
        out
    }

    /// Eliminates every pivot column of `row`; returns the first remaining
    /// non-pivot nonzero column, if `stop_at_free` is set.
    fn eliminate(&self, row: &mut PackedRow, stop_at_free: bool) -> Option<usize> {
        let mut from = 0;
        while let Some(c) = self.first_nonzero(row, from) {
            match self.pivot_of_col[c] {
                Some(r) => {
                    let e = self.get(row, c);
                    self.axpy(row, &self.rows[r as usize].1, e, c / 64);
                }
                None if stop_at_free => return Some(c),
                None => {}
            }
            from = c + 1;
        }
        None
    }
}

impl Echelon for BitSlicedEchelon {
    fn cols(&self) -> usize {
        self.cols
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    fn insert(&mut self, row: &[Elem]) -> bool {
        debug_assert_eq!(row.len(), self.cols);
        if self.rows.len() == self.cols {
            return false;
        }
        let mut packed = self.pack(row);
        match self.eliminate(&mut packed, true) {
            None => false,
            Some(c) => {
                let lead = self.get(&packed, c);
                let inv = self.field.inv(lead).expect("leading entry is nonzero");
                let normalized = self.scale(&packed, inv);
                self.pivot_of_col[c] = Some(self.rows.len() as u32);
                self.rows.push((c, normalized));
                true
            }
        }
    }

    fn reduce(&self, row: &[Elem]) -> Vec<Elem> {
        let mut packed = self.pack(row);
        self.eliminate(&mut packed, false);
        self.unpack(&packed)
    }

    fn rref_rows(&self) -> Vec<(usize, Vec<Elem>)> {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&i| self.rows[i].0);
        let mut rows: Vec<(usize, PackedRow)> =
            order.iter().map(|&i| self.rows[i].clone()).collect();
        // back substitution, last pivot first
        for i in (0..rows.len()).rev() {
            let (c, pivot_row) = rows[i].clone();
            for r in rows.iter_mut().take(i) {
                let e = self.get(&r.1, c);
                if !e.is_zero() {
                    self.axpy(&mut r.1, &pivot_row, e, c / 64);
                }
            }
        }
        rows.into_iter()
            .map(|(c, r)| (c, self.unpack(&r)))
            .collect()
    }
}
