//! Exact dense linear algebra over F_q.
//!
//! Elimination is deterministic: pivots are taken in the leftmost column
//! that still has a nonzero entry, from the first such row. For p = 2 the
//! row operations run on bit-sliced rows (see [`bitsliced`]).

pub mod bitsliced;

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::gfq::{Elem, FieldSpec};

pub use bitsliced::BitSlicedEchelon;

/// Incremental row echelon form with at most `cols` stored pivot rows.
pub trait Echelon: Send {
    fn cols(&self) -> usize;
    fn rank(&self) -> usize;
    /// Adds a row; returns whether it was independent of the stored ones.
    fn insert(&mut self, row: &[Elem]) -> bool;
    /// The canonical residual of `row` modulo the row space: zero in every
    /// pivot column, zero exactly when `row` lies in the span.
    fn reduce(&self, row: &[Elem]) -> Vec<Elem>;
    /// Fully reduced pivot rows `(pivot column, row)`, sorted by column.
    fn rref_rows(&self) -> Vec<(usize, Vec<Elem>)>;
}

/// Picks the bit-sliced echelon for p = 2 and the generic one otherwise.
pub fn new_echelon(field: &FieldSpec, cols: usize) -> Box<dyn Echelon> {
    if field.p() == 2 {
        Box::new(BitSlicedEchelon::new(field, cols))
    } else {
        Box::new(GenericEchelon::new(field, cols))
    }
}

pub struct GenericEchelon {
    field: FieldSpec,
    cols: usize,
    pivot_of_col: Vec<Option<u32>>,
    rows: Vec<(usize, Vec<Elem>)>,
}

impl GenericEchelon {
    pub fn new(field: &FieldSpec, cols: usize) -> Self {
        GenericEchelon {
            field: field.clone(),
            cols,
            pivot_of_col: vec![None; cols],
            rows: Vec::new(),
        }
    }

    fn axpy(field: &FieldSpec, target: &mut [Elem], src: &[Elem], c: Elem, from: usize) {
        for j in from..target.len() {
            if !src[j].is_zero() {
                target[j] = field.add(target[j], field.mul(c, src[j]));
            }
        }
    }

    fn eliminate(&self, row: &mut [Elem], stop_at_free: bool) -> Option<usize> {
        for c in 0..row.len() {
            if row[c].is_zero() {
                continue;
            }
            match self.pivot_of_col[c] {
                Some(r) => {
                    let e = self.field.neg(row[c]);
                    Self::axpy(&self.field, row, &self.rows[r as usize].1, e, c);
                }
                None if stop_at_free => return Some(c),
                None => {}
            }
        }
        None
    }
}

impl Echelon for GenericEchelon {
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
        let mut row = row.to_vec();
        match self.eliminate(&mut row, true) {
            None => false,
            Some(c) => {
                let inv = self.field.inv(row[c]).expect("nonzero lead");
                for x in row.iter_mut().skip(c) {
                    *x = self.field.mul(*x, inv);
                }
                self.pivot_of_col[c] = Some(self.rows.len() as u32);
                self.rows.push((c, row));
                true
            }
        }
    }

    fn reduce(&self, row: &[Elem]) -> Vec<Elem> {
        let mut row = row.to_vec();
        self.eliminate(&mut row, false);
        row
    }

    fn rref_rows(&self) -> Vec<(usize, Vec<Elem>)> {
        let mut rows = self.rows.clone();
        rows.sort_by_key(|(c, _)| *c);
        for i in (0..rows.len()).rev() {
            let (c, pivot_row) = rows[i].clone();
            for r in rows.iter_mut().take(i) {
                let e = r.1[c];
                if !e.is_zero() {
                    Self::axpy(&self.field, &mut r.1, &pivot_row, self.field.neg(e), c);
                }
            }
        }
        rows
    }
}

/// Dense row-major matrix over F_q.
#[derive(Clone, PartialEq, Eq)]
pub struct GFqMatrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl std::fmt::Debug for GFqMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl GFqMatrix {
    pub fn zeros(field: &FieldSpec, rows: usize, cols: usize) -> GFqMatrix {
        GFqMatrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![Elem::ZERO; rows * cols],
        }
    }

    pub fn identity(field: &FieldSpec, n: usize) -> GFqMatrix {
        let mut m = GFqMatrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, Elem::ONE);
        }
        m
    }

    pub fn from_rows(field: &FieldSpec, cols: usize, rows: Vec<Vec<Elem>>) -> Result<GFqMatrix> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let n = rows.len();
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    got: r.len(),
                });
            }
            if r.iter().any(|e| e.index() >= field.order()) {
                return Err(Error::FieldMismatch);
            }
            data.extend(r);
        }
        Ok(GFqMatrix {
            field: field.clone(),
            rows: n,
            cols,
            data,
        })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Elem {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Elem> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    pub fn transpose(&self) -> GFqMatrix {
        let mut t = GFqMatrix::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Elem]) -> Result<Vec<Elem>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: v.len(),
            });
        }
        let f = &self.field;
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(Elem::ZERO, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect())
    }

    pub fn mul(&self, other: &GFqMatrix) -> Result<GFqMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: other.rows,
            });
        }
        let f = &self.field;
        let mut out = GFqMatrix::zeros(f, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        let cur = out.get(r, c);
                        out.set(r, c, f.add(cur, f.mul(a, b)));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Reduced row echelon form and its pivot columns, by in-place
    /// Gauss-Jordan elimination.
    pub fn rref(&self) -> (GFqMatrix, Vec<usize>) {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = f.inv(m.get(r, c)).expect("pivot is nonzero");
            for j in c..m.cols {
                let v = m.get(r, j);
                m.set(r, j, f.mul(v, inv));
            }
            let pivot_row: Vec<Elem> = m.row(r).to_vec();
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let e = m.get(i, c);
                if e.is_zero() {
                    continue;
                }
                let ne = f.neg(e);
                for j in c..m.cols {
                    if !pivot_row[j].is_zero() {
                        let v = m.get(i, j);
                        m.set(i, j, f.add(v, f.mul(ne, pivot_row[j])));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    /// Rank by plain Gaussian elimination on the element tables.
    pub fn rank_generic(&self) -> usize {
        let mut e = GenericEchelon::new(&self.field, self.cols);
        for r in 0..self.rows {
            e.insert(self.row(r));
        }
        e.rank()
    }

    /// Rank through the bit-sliced echelon; only for characteristic 2.
    pub fn rank_bitsliced(&self) -> usize {
        let mut e = BitSlicedEchelon::new(&self.field, self.cols);
        for r in 0..self.rows {
            e.insert(self.row(r));
        }
        e.rank()
    }

    pub fn rank(&self) -> usize {
        if self.field.p() == 2 {
            self.rank_bitsliced()
        } else {
            self.rank_generic()
        }
    }

    /// Basis of the right null space, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<Elem>> {
        let echelon = self.echelon();
        kernel_from_rref(&self.field, self.cols, &echelon.rref_rows())
    }

    fn echelon(&self) -> Box<dyn Echelon> {
        let mut e = new_echelon(&self.field, self.cols);
        for r in 0..self.rows {
            e.insert(self.row(r));
        }
        e
    }

    /// Some `x` with `M x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[Elem]) -> Result<Option<Vec<Elem>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                got: b.len(),
            });
        }
        let mut aug = GFqMatrix::zeros(&self.field, self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, self.cols, b[r]);
        }
        let (red, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![Elem::ZERO; self.cols];
        for (i, &c) in pivots.iter().enumerate() {
            x[c] = red.get(i, self.cols);
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Option<GFqMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = GFqMatrix::zeros(&self.field, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, n + r, Elem::ONE);
        }
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = GFqMatrix::zeros(&self.field, n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, red.get(r, n + c));
            }
        }
        Some(inv)
    }

    /// Debug dump: a `rows cols` header, then one line of element indices
    /// per row.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.rows, self.cols);
        for r in 0..self.rows {
            let line: Vec<String> = self.row(r).iter().map(|e| e.index().to_string()).collect();
            let _ = writeln!(s, "{}", line.join(" "));
        }
        s
    }
}

/// Null-space basis from fully reduced pivot rows of a `cols`-wide matrix.
pub fn kernel_from_rref(
    field: &FieldSpec,
    cols: usize,
    rref: &[(usize, Vec<Elem>)],
) -> Vec<Vec<Elem>> {
    let mut is_pivot = vec![false; cols];
    for (c, _) in rref {
        is_pivot[*c] = true;
    }
    (0..cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![Elem::ZERO; cols];
            v[free] = Elem::ONE;
            for (c, row) in rref {
                v[*c] = field.neg(row[free]);
            }
            v
        })
        .collect()
}

/// Rank of a row stream without materializing the matrix; the working set
/// is at most `cols` reduced pivot rows.
pub fn rank_streaming<I>(field: &FieldSpec, rows: I, cols: usize) -> Result<usize>
where
    I: IntoIterator<Item = Vec<Elem>>,
{
    let mut e = new_echelon(field, cols);
    for row in rows {
        if row.len() != cols {
            return Err(Error::DimensionMismatch {
                expected: cols,
                got: row.len(),
            });
        }
        if e.rank() == cols {
            break;
        }
        e.insert(&row);
    }
    Ok(e.rank())
}

/// Worst-case bytes held by a streaming echelon of width `cols`.
pub fn streaming_memory_estimate(field: &FieldSpec, cols: usize) -> u64 {
    let cols = cols as u64;
    if field.p() == 2 {
        cols * cols.div_ceil(64) * field.m() as u64 * 8
    } else {
        cols * cols * std::mem::size_of::<Elem>() as u64
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn random_matrix(
        rng: &mut impl Rng,
        f: &FieldSpec,
        rows: usize,
        cols: usize,
        density: f64,
    ) -> GFqMatrix {
        let data = (0..rows)
            .map(|_| {
                (0..cols)
                    .map(|_| {
                        if rng.gen_bool(density) {
                            Elem::from_index(rng.gen_range(0..f.order()))
                        } else {
                            Elem::ZERO
                        }
                    })
                    .collect()
            })
            .collect();
        GFqMatrix::from_rows(f, cols, data).unwrap()
    }

    /// Independent oracle: division-free elimination
    /// `row_j <- a_kk row_j - a_jk row_k`.
    fn fraction_free_rank(m: &GFqMatrix) -> usize {
        let f = m.field().clone();
        let mut a: Vec<Vec<Elem>> = (0..m.rows()).map(|r| m.row(r).to_vec()).collect();
        let mut rank = 0;
        for c in 0..m.cols() {
            let Some(p) = (rank..a.len()).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(rank, p);
            let pivot = a[rank].clone();
            for row in a.iter_mut().skip(rank + 1) {
                let x = row[c];
                if x.is_zero() {
                    continue;
                }
                for j in 0..row.len() {
                    row[j] = f.sub(f.mul(pivot[c], row[j]), f.mul(x, pivot[j]));
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn identity_and_zero() {
        let f = FieldSpec::with_order(4).unwrap();
        let id = GFqMatrix::identity(&f, 5);
        assert_eq!(id.rank(), 5);
        assert!(id.kernel_basis().is_empty());
        let z = GFqMatrix::zeros(&f, 3, 4);
        assert_eq!(z.rank(), 0);
        let k = z.kernel_basis();
        assert_eq!(k.len(), 4);
        for (i, v) in k.iter().enumerate() {
            assert_eq!(v.iter().filter(|e| !e.is_zero()).count(), 1);
            assert_eq!(v[i], Elem::ONE);
        }
    }

    #[test]
    fn rank_matches_fraction_free_oracle() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(1);
        for q in [3, 4, 5, 8, 9, 16, 25] {
            let f = FieldSpec::with_order(q).unwrap();
            for _ in 0..10 {
                let rows = rng.gen_range(1..50);
                let cols = rng.gen_range(1..30);
                let density = rng.gen_range(0.05..1.0);
                let m = random_matrix(&mut rng, &f, rows, cols, density);
                let r = fraction_free_rank(&m);
                assert_eq!(m.rank(), r);
                assert_eq!(m.rank_generic(), r);
                assert_eq!(m.transpose().rank(), r);
                assert_eq!(m.rref().1.len(), r);
                let kernel = m.kernel_basis();
                assert_eq!(kernel.len() + r, cols);
                for v in &kernel {
                    assert!(m.mul_vec(v).unwrap().iter().all(|e| e.is_zero()));
                }
            }
        }
        let f8 = FieldSpec::with_order(8).unwrap();
        let m = random_matrix(&mut rng, &f8, 50, 30, 0.7);
        assert_eq!(m.rank(), fraction_free_rank(&m));
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(2);
        for q in [4, 9] {
            let f = FieldSpec::with_order(q).unwrap();
            for _ in 0..20 {
                let m = random_matrix(&mut rng, &f, 12, 8, 0.5);
                let zero = vec![Elem::ZERO; 12];
                let x0 = m.solve(&zero).unwrap().unwrap();
                assert!(m.mul_vec(&x0).unwrap().iter().all(|e| e.is_zero()));

                let x: Vec<Elem> = (0..8)
                    .map(|_| Elem::from_index(rng.gen_range(0..q as usize)))
                    .collect();
                let b = m.mul_vec(&x).unwrap();
                let sol = m.solve(&b).unwrap().expect("b is in the column space");
                assert_eq!(m.mul_vec(&sol).unwrap(), b);

                let b2: Vec<Elem> = (0..12)
                    .map(|_| Elem::from_index(rng.gen_range(0..q as usize)))
                    .collect();
                let mut aug_rows: Vec<Vec<Elem>> = (0..12).map(|r| m.row(r).to_vec()).collect();
                for (r, row) in aug_rows.iter_mut().enumerate() {
                    row.push(b2[r]);
                }
                let aug = GFqMatrix::from_rows(&f, 9, aug_rows).unwrap();
                match m.solve(&b2).unwrap() {
                    Some(s) => assert_eq!(m.mul_vec(&s).unwrap(), b2),
                    None => assert!(aug.rank() > m.rank()),
                }
            }
            let m = GFqMatrix::zeros(&f, 2, 2);
            assert!(matches!(
                m.solve(&[Elem::ZERO]),
                Err(Error::DimensionMismatch { .. })
            ));
        }
    }

    #[test]
    fn bitsliced_and_generic_agree() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(3);
        for q in [2, 4, 8, 16, 32] {
            let f = FieldSpec::with_order(q).unwrap();
            for _ in 0..6 {
                let rows = rng.gen_range(1..140);
                let cols = rng.gen_range(1..140);
                let density = rng.gen_range(0.02..1.0);
                let m = random_matrix(&mut rng, &f, rows, cols, density);
                assert_eq!(m.rank_bitsliced(), m.rank_generic());
            }
        }
    }

    #[test]
    fn echelon_reduce_and_rref() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(4);
        for q in [4, 9, 16] {
            let f = FieldSpec::with_order(q).unwrap();
            let m = random_matrix(&mut rng, &f, 6, 10, 0.6);
            let mut e = new_echelon(&f, 10);
            for r in 0..6 {
                e.insert(m.row(r));
            }
            let (red, pivots) = m.rref();
            let rows = e.rref_rows();
            assert_eq!(rows.iter().map(|(c, _)| *c).collect::<Vec<_>>(), pivots);
            for (i, (_, row)) in rows.iter().enumerate() {
                assert_eq!(row.as_slice(), red.row(i));
            }
            for r in 0..6 {
                assert!(e.reduce(m.row(r)).iter().all(|x| x.is_zero()));
            }
        }
    }

    #[test]
    fn streaming_rank() {
        let f = FieldSpec::with_order(4).unwrap();
        let row = vec![Elem::ONE, Elem::from_index(2), Elem::ZERO];
        assert_eq!(
            rank_streaming(&f, std::iter::repeat_n(row, 50), 3).unwrap(),
            1
        );
        assert!(rank_streaming(&f, vec![vec![Elem::ONE]], 3).is_err());
        let mut rng = rand::rngs::StdRng::seed_from_u64(5);
        for q in [4, 9] {
            let f = FieldSpec::with_order(q).unwrap();
            let m = random_matrix(&mut rng, &f, 40, 25, 0.3);
            let rows: Vec<Vec<Elem>> = (0..40).map(|r| m.row(r).to_vec()).collect();
            assert_eq!(rank_streaming(&f, rows, 25).unwrap(), m.rank());
        }
    }

    #[test]
    fn inverse_round_trip() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(6);
        let f = FieldSpec::with_order(9).unwrap();
        let mut found = 0;
        while found < 5 {
            let m = random_matrix(&mut rng, &f, 6, 6, 0.9);
            if let Some(inv) = m.inverse() {
                assert_eq!(m.mul(&inv).unwrap(), GFqMatrix::identity(&f, 6));
                found += 1;
            } else {
                assert!(m.rank() < 6);
            }
        }
        assert!(m_text_round(&f));
    }

    fn m_text_round(f: &FieldSpec) -> bool {
        let m = GFqMatrix::identity(f, 2);
        m.to_text() == "2 2\n1 0\n0 1\n"
    }
}
