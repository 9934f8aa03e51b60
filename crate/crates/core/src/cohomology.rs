//! Cocycles, coboundaries and cohomology of the quandle subcomplex.
//!
//! The quandle cochain space `C^n` is spanned by the reduced monomials
//! `U_1^{e_1}..U_n^{e_n}` with `e_2..e_{n-1} > 0`, minus the constant
//! monomial: constants are cocycles in every degree that are never hit by
//! `δ`, so they would only add a trivial summand.
//!
//! `δ` preserves the vector of base-p digit sums `D_j = Σ_i digit_j(e_i)`:
//! every substitution splits an exponent into carry-free parts, and each
//! new variable receives exactly one part. The matrices of `δ` are
//! therefore block diagonal by this weight, and every rank is computed
//! blockwise.

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::cochain::{delta_pointwise, delta_poly, is_quandle_cochain, Exponents, UCochain};
use crate::error::{Error, Result};
use crate::format::{cochain_to_json_terms, cochain_to_string, JsonTerm};
use crate::generators::{basis_candidates, Candidate};
use crate::gfq::{Elem, FieldSpec};
use crate::linalg::{kernel_from_rref, new_echelon, Echelon, GFqMatrix};
use crate::quandle::AlexanderFQuandle;
use crate::report::Environment;

/// Estimated working set above which callers must opt in.
pub const MEMORY_CEILING: u64 = 4 << 30;

/// Digit-sum vector of a monomial.
pub type Weight = smallvec::SmallVec<[u8; 8]>;

pub fn weight_of(field: &FieldSpec, exps: &[u16]) -> Weight {
    let (p, m) = (field.p() as u16, field.m() as usize);
    let mut w: Weight = smallvec::smallvec![0; m];
    for &e in exps {
        let mut e = e;
        for slot in w.iter_mut() {
            *slot += (e % p) as u8;
            e /= p;
        }
    }
    w
}

/// Which implementation of `δ` builds the matrices.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum DeltaRoute {
    #[default]
    Poly,
    Pointwise,
}

impl DeltaRoute {
    fn apply(self, quandle: &AlexanderFQuandle, phi: &UCochain) -> Result<UCochain> {
        match self {
            DeltaRoute::Poly => delta_poly(quandle, phi),
            DeltaRoute::Pointwise => delta_pointwise(quandle, phi),
        }
    }
}

/// Ordered monomial basis of `C^n`, grouped by weight.
#[derive(Clone, Debug)]
pub struct CochainSpaceBasis {
    field: FieldSpec,
    arity: usize,
    monomials: Vec<Exponents>,
    local: Vec<u32>,
    blocks: BTreeMap<Weight, Vec<usize>>,
}

fn exponent_range(q: u16, arity: usize, slot: usize) -> std::ops::Range<u16> {
    if arity >= 3 && slot > 0 && slot + 1 < arity {
        1..q
    } else {
        0..q
    }
}

impl CochainSpaceBasis {
    pub fn new(field: &FieldSpec, arity: usize) -> CochainSpaceBasis {
        let q = field.q() as u16;
        let mut monomials = Vec::new();
        let mut current: Exponents = (0..arity)
            .map(|k| exponent_range(q, arity, k).start)
            .collect();
        if arity > 0 {
            'outer: loop {
                if current.iter().any(|&e| e > 0) {
                    monomials.push(current.clone());
                }
                // odometer, last variable fastest
                let mut k = arity;
                loop {
                    if k == 0 {
                        break 'outer;
                    }
                    k -= 1;
                    let r = exponent_range(q, arity, k);
                    if current[k] + 1 < r.end {
                        current[k] += 1;
                        continue 'outer;
                    }
                    current[k] = r.start;
                }
            }
        }
        let mut blocks: BTreeMap<Weight, Vec<usize>> = BTreeMap::new();
        let mut local = vec![0u32; monomials.len()];
        for (i, e) in monomials.iter().enumerate() {
            let b = blocks.entry(weight_of(field, e)).or_default();
            local[i] = b.len() as u32;
            b.push(i);
        }
        CochainSpaceBasis {
            field: field.clone(),
            arity,
            monomials,
            local,
            blocks,
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Exponents] {
        &self.monomials
    }

    /// Position of a monomial, if it belongs to the basis.
    pub fn index_of(&self, exps: &[u16]) -> Option<usize> {
        let q = self.field.q() as u16;
        if exps.len() != self.arity || exps.iter().all(|&e| e == 0) {
            return None;
        }
        let mut idx = 0usize;
        for (k, &e) in exps.iter().enumerate() {
            let r = exponent_range(q, self.arity, k);
            if !r.contains(&e) {
                return None;
            }
            idx = idx * r.len() + (e - r.start) as usize;
        }
        // the constant monomial is only present, and skipped, when every
        // range starts at zero
        Some(if self.arity <= 2 { idx - 1 } else { idx })
    }

    pub fn weights(&self) -> impl Iterator<Item = &Weight> {
        self.blocks.keys()
    }

    pub fn block(&self, w: &Weight) -> &[usize] {
        self.blocks.get(w).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn local_index(&self, global: usize) -> usize {
        self.local[global] as usize
    }

    /// Coordinates of a cochain; fails if some term lies outside `C^n`.
    pub fn coords(&self, phi: &UCochain) -> Result<Vec<Elem>> {
        let mut v = vec![Elem::ZERO; self.len()];
        for (e, c) in phi.terms() {
            let i = self.index_of(e).ok_or(Error::NotQuandleCochain)?;
            v[i] = c;
        }
        Ok(v)
    }

    pub fn cochain(&self, coords: &[Elem]) -> UCochain {
        let mut out = UCochain::zero(&self.field, self.arity);
        for (i, &c) in coords.iter().enumerate() {
            out.add_term(self.monomials[i].clone(), c);
        }
        out
    }

    /// Cochain from coordinates on one weight block.
    fn block_cochain(&self, w: &Weight, coords: &[Elem]) -> UCochain {
        let mut out = UCochain::zero(&self.field, self.arity);
        for (&g, &c) in self.block(w).iter().zip(coords) {
            out.add_term(self.monomials[g].clone(), c);
        }
        out
    }
}

pub fn space_basis(quandle: &AlexanderFQuandle, n: usize) -> CochainSpaceBasis {
    CochainSpaceBasis::new(quandle.field(), n)
}

/// Block sizes in closed form. A free slot contributes `Π_j g(x_j)` with
/// `g = 1 + x + ... + x^{p-1}`, a positive slot that product minus 1, so
/// `|C^n_D| = Σ_k C(mid,k) (-1)^k Π_j [x^{D_j}] g^{n-k}`.
struct BlockCounter {
    n: usize,
    mid: usize,
    m: usize,
    /// `digit[r][d]` = coefficient of `x^d` in `g^r`
    digit: Vec<Vec<i128>>,
}

impl BlockCounter {
    fn new(field: &FieldSpec, n: usize) -> BlockCounter {
        let p = field.p() as usize;
        let mut digit = vec![vec![1i128]];
        for r in 1..=n {
            let prev: &Vec<i128> = &digit[r - 1];
            let mut next = vec![0i128; prev.len() + p - 1];
            for (d, &c) in prev.iter().enumerate() {
                for k in 0..p {
                    next[d + k] += c;
                }
            }
            digit.push(next);
        }
        BlockCounter {
            n,
            mid: if n >= 3 { n - 2 } else { 0 },
            m: field.m() as usize,
            digit,
        }
    }

    fn max_digit(&self) -> usize {
        self.digit[self.n].len() - 1
    }

    fn size(&self, w: &[usize]) -> u64 {
        if self.n <= 2 && w.iter().all(|&d| d == 0) {
            return 0;
        }
        let mut total = 0i128;
        let mut binom = 1i128;
        for k in 0..=self.mid {
            let row = &self.digit[self.n - k];
            let prod: i128 = w
                .iter()
                .map(|&d| row.get(d).copied().unwrap_or(0))
                .product();
            total += if k % 2 == 0 {
                binom * prod
            } else {
                -binom * prod
            };
            binom = binom * (self.mid - k) as i128 / (k + 1) as i128;
        }
        total as u64
    }

    /// Calls `visit` on every weight with a nonempty block.
    fn for_each(&self, mut visit: impl FnMut(&[usize], u64)) {
        let top = self.max_digit();
        let mut w = vec![0usize; self.m];
        loop {
            let s = self.size(&w);
            if s > 0 {
                visit(&w, s);
            }
            let mut k = 0;
            while k < self.m && w[k] == top {
                w[k] = 0;
                k += 1;
            }
            if k == self.m {
                return;
            }
            w[k] += 1;
        }
    }
}

#[cfg(test)]
fn block_sizes(field: &FieldSpec, n: usize) -> BTreeMap<Weight, u64> {
    let mut out = BTreeMap::new();
    BlockCounter::new(field, n).for_each(|w, s| {
        out.insert(w.iter().map(|&d| d as u8).collect(), s);
    });
    out
}

/// Upper estimate of the bytes held while computing `H^n`: per weight,
/// two echelon forms of width `|C^n_w|` and the sparse image of `δ^n`.
pub fn estimate_bytes(field: &FieldSpec, n: usize) -> u64 {
    let entry = if field.p() == 2 {
        (field.m() as u64).div_ceil(8).max(1)
    } else {
        std::mem::size_of::<Elem>() as u64
    };
    let per_term = (std::mem::size_of::<(usize, Elem)>() as u64)
        .saturating_mul(2u64.saturating_pow(field.m()));
    let next = BlockCounter::new(field, n + 1);
    let mut total = 0u64;
    BlockCounter::new(field, n).for_each(|w, c| {
        let bytes = (2 * entry)
            .saturating_mul(c.saturating_mul(c))
            .saturating_add(c.saturating_mul(per_term))
            .saturating_add(next.size(w).saturating_mul(8));
        total = total.saturating_add(bytes);
    });
    total
}

fn check_resources(field: &FieldSpec, n: usize, allow_big: bool) -> Result<()> {
    let estimate = estimate_bytes(field, n);
    if estimate > MEMORY_CEILING && !allow_big {
        return Err(Error::ResourceLimit {
            estimate_bytes: estimate,
            ceiling_bytes: MEMORY_CEILING,
        });
    }
    Ok(())
}

/// Images of the monomials `src_ids` of `src`, as sparse coordinates local
/// to the block `w` of `dst`.
fn block_images(
    quandle: &AlexanderFQuandle,
    route: DeltaRoute,
    src: &CochainSpaceBasis,
    src_ids: &[usize],
    dst: &CochainSpaceBasis,
) -> Result<Vec<Vec<(usize, Elem)>>> {
    let f = quandle.field();
    src_ids
        .iter()
        .map(|&g| {
            let exps: Vec<u64> = src.monomials[g].iter().map(|&e| e as u64).collect();
            let image = route.apply(
                quandle,
                &UCochain::monomial(f, src.arity, &exps, Elem::ONE)?,
            )?;
            image
                .terms()
                .map(|(e, c)| {
                    let i = dst.index_of(e).ok_or(Error::NotQuandleCochain)?;
                    Ok((dst.local_index(i), c))
                })
                .collect()
        })
        .collect()
}

fn dense(width: usize, sparse: &[(usize, Elem)]) -> Vec<Elem> {
    let mut v = vec![Elem::ZERO; width];
    for &(i, c) in sparse {
        v[i] = c;
    }
    v
}

/// Per-weight data of `C^n`.
struct BlockResult {
    weight: Weight,
    size: usize,
    rank_delta: usize,
    coboundaries: Box<dyn Echelon>,
    kernel: Vec<Vec<Elem>>,
}

impl BlockResult {
    fn dim_z(&self) -> usize {
        self.size - self.rank_delta
    }

    fn dim_h(&self) -> usize {
        self.dim_z() - self.coboundaries.rank()
    }
}

fn analyse_block(
    quandle: &AlexanderFQuandle,
    route: DeltaRoute,
    bases: &[Option<CochainSpaceBasis>; 3],
    w: &Weight,
    want_kernel: bool,
) -> Result<BlockResult> {
    let [prev, cur, next] = bases;
    let cur = cur.as_ref().expect("current degree");
    let next = next.as_ref().expect("next degree");
    let f = quandle.field();
    let ids = cur.block(w);
    let size = ids.len();

    let mut coboundaries = new_echelon(f, size);
    if let Some(prev) = prev {
        for img in block_images(quandle, route, prev, prev.block(w), cur)? {
            coboundaries.insert(&dense(size, &img));
        }
    }

    // rows of δ^n restricted to this block
    let images = block_images(quandle, route, cur, ids, next)?;
    let mut rows: BTreeMap<usize, Vec<(usize, Elem)>> = BTreeMap::new();
    for (col, img) in images.iter().enumerate() {
        for &(r, c) in img {
            rows.entry(r).or_default().push((col, c));
        }
    }
    let mut delta = new_echelon(f, size);
    for row in rows.values() {
        if delta.rank() == size {
            break;
        }
        delta.insert(&dense(size, row));
    }
    let rank_delta = delta.rank();
    let dim_h = size - rank_delta - coboundaries.rank();
    let kernel = if want_kernel && dim_h > 0 {
        kernel_from_rref(f, size, &delta.rref_rows())
    } else {
        Vec::new()
    };
    Ok(BlockResult {
        weight: w.clone(),
        size,
        rank_delta,
        coboundaries,
        kernel,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Representative {
    /// Family label of a generator candidate, or `kernel`.
    pub label: String,
    pub cochain: String,
    pub terms: Vec<JsonTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyReport {
    pub field: String,
    pub omega: String,
    pub beta: String,
    pub n: usize,
    #[serde(rename = "dimZ")]
    pub dim_z: usize,
    #[serde(rename = "dimB")]
    pub dim_b: usize,
    #[serde(rename = "dimH")]
    pub dim_h: usize,
    pub representatives: Vec<Representative>,
    pub elapsed_ms: u64,
    #[serde(skip)]
    pub representative_cochains: Vec<UCochain>,
}

impl CohomologyReport {
    /// JSON form; `elapsed_ms` is zeroed unless `with_timing`, which keeps
    /// the output byte-stable.
    pub fn to_json(&self, with_timing: bool) -> String {
        let mut r = self.clone();
        if !with_timing {
            r.elapsed_ms = 0;
        }
        serde_json::to_string_pretty(&r).expect("report serializes")
    }
}

#[derive(Clone, Debug)]
pub struct HDimOptions {
    pub allow_big: bool,
    pub representatives: bool,
    pub route: DeltaRoute,
    /// Extra candidates tried before the built-in families.
    pub candidates: Vec<Candidate>,
}

impl Default for HDimOptions {
    fn default() -> Self {
        HDimOptions {
            allow_big: false,
            representatives: true,
            route: DeltaRoute::Poly,
            candidates: Vec::new(),
        }
    }
}

pub fn h_dim(quandle: &AlexanderFQuandle, n: usize, allow_big: bool) -> Result<CohomologyReport> {
    h_dim_with(
        quandle,
        n,
        &HDimOptions {
            allow_big,
            ..HDimOptions::default()
        },
    )
}

pub fn h_dim_with(
    quandle: &AlexanderFQuandle,
    n: usize,
    opts: &HDimOptions,
) -> Result<CohomologyReport> {
    let start = Instant::now();
    if n == 0 {
        return Err(Error::ArityMismatch {
            expected: 1,
            got: 0,
        });
    }
    let f = quandle.field();
    check_resources(f, n, opts.allow_big)?;
    let bases = [
        (n >= 2).then(|| CochainSpaceBasis::new(f, n - 1)),
        Some(CochainSpaceBasis::new(f, n)),
        Some(CochainSpaceBasis::new(f, n + 1)),
    ];
    let cur = bases[1].as_ref().expect("current degree");
    let weights: Vec<Weight> = cur.weights().cloned().collect();
    let blocks: Vec<BlockResult> = weights
        .par_iter()
        .map(|w| analyse_block(quandle, opts.route, &bases, w, opts.representatives))
        .collect::<Result<_>>()?;

    let dim_z: usize = blocks.iter().map(BlockResult::dim_z).sum();
    let dim_b: usize = blocks.iter().map(|b| b.coboundaries.rank()).sum();
    let dim_h = dim_z - dim_b;

    let mut reps = Vec::new();
    if opts.representatives && dim_h > 0 {
        let mut candidates = opts.candidates.clone();
        candidates.extend(basis_candidates(quandle, n));
        reps = choose_representatives(quandle, cur, &blocks, dim_h, &candidates)?;
    }

    let env = Environment::of(quandle);
    Ok(CohomologyReport {
        field: env.field,
        omega: env.omega,
        beta: env.beta,
        n,
        dim_z,
        dim_b,
        dim_h,
        representatives: reps
            .iter()
            .map(|(label, c)| Representative {
                label: label.clone(),
                cochain: cochain_to_string(c),
                terms: cochain_to_json_terms(c),
            })
            .collect(),
        elapsed_ms: start.elapsed().as_millis() as u64,
        representative_cochains: reps.into_iter().map(|(_, c)| c).collect(),
    })
}

/// Greedy completion: named candidates first, then kernel vectors, each
/// kept when independent modulo coboundaries of the ones already kept.
fn choose_representatives(
    quandle: &AlexanderFQuandle,
    basis: &CochainSpaceBasis,
    blocks: &[BlockResult],
    dim_h: usize,
    candidates: &[Candidate],
) -> Result<Vec<(String, UCochain)>> {
    let f = quandle.field();
    let live: Vec<&BlockResult> = blocks.iter().filter(|b| b.dim_h() > 0).collect();
    let width: usize = live.iter().map(|b| b.size).sum();
    let offsets: Vec<usize> = live
        .iter()
        .scan(0, |acc, b| {
            let o = *acc;
            *acc += b.size;
            Some(o)
        })
        .collect();
    let mut chosen = new_echelon(f, width);
    let mut out = Vec::new();

    // residual modulo coboundaries, concatenated over the live blocks
    let project = |coords: &[Elem]| -> Vec<Elem> {
        let mut v = vec![Elem::ZERO; width];
        for (b, &o) in live.iter().zip(&offsets) {
            let local: Vec<Elem> = basis.block(&b.weight).iter().map(|&g| coords[g]).collect();
            if local.iter().all(|e| e.is_zero()) {
                continue;
            }
            let r = b.coboundaries.reduce(&local);
            v[o..o + b.size].copy_from_slice(&r);
        }
        v
    };

    for cand in candidates {
        if out.len() == dim_h {
            return Ok(out);
        }
        if cand.cochain.arity() != basis.arity() || cand.cochain.field() != f {
            continue;
        }
        let Ok(coords) = basis.coords(&cand.cochain) else {
            continue;
        };
        if !delta_poly(quandle, &cand.cochain)?.is_zero() {
            continue;
        }
        if chosen.insert(&project(&coords)) {
            out.push((cand.label.clone(), cand.cochain.clone()));
        }
    }
    for (b, &o) in live.iter().zip(&offsets) {
        for k in &b.kernel {
            if out.len() == dim_h {
                return Ok(out);
            }
            let residual = b.coboundaries.reduce(k);
            let mut v = vec![Elem::ZERO; width];
            v[o..o + b.size].copy_from_slice(&residual);
            if chosen.insert(&v) {
                out.push(("kernel".into(), basis.block_cochain(&b.weight, &residual)));
            }
        }
    }
    Ok(out)
}

/// Dense matrix of `δ^n: C^n -> C^{n+1}` in the basis orderings.
pub fn delta_matrix(quandle: &AlexanderFQuandle, n: usize) -> Result<GFqMatrix> {
    let f = quandle.field();
    let src = CochainSpaceBasis::new(f, n);
    let dst = CochainSpaceBasis::new(f, n + 1);
    let bytes = (src.len() as u64) * (dst.len() as u64) * std::mem::size_of::<Elem>() as u64;
    if bytes > MEMORY_CEILING {
        return Err(Error::ResourceLimit {
            estimate_bytes: bytes,
            ceiling_bytes: MEMORY_CEILING,
        });
    }
    let mut m = GFqMatrix::zeros(f, dst.len(), src.len());
    for (j, exps) in src.monomials().iter().enumerate() {
        let exps: Vec<u64> = exps.iter().map(|&e| e as u64).collect();
        let image = delta_poly(quandle, &UCochain::monomial(f, n, &exps, Elem::ONE)?)?;
        for (e, c) in image.terms() {
            let i = dst.index_of(e).ok_or(Error::NotQuandleCochain)?;
            m.set(i, j, c);
        }
    }
    Ok(m)
}

fn check_cochain(quandle: &AlexanderFQuandle, phi: &UCochain) -> Result<()> {
    if phi.field() != quandle.field() {
        return Err(Error::FieldMismatch);
    }
    if !is_quandle_cochain(phi) {
        return Err(Error::NotQuandleCochain);
    }
    Ok(())
}

pub fn is_cocycle(quandle: &AlexanderFQuandle, phi: &UCochain) -> Result<bool> {
    check_cochain(quandle, phi)?;
    let d = delta_poly(quandle, phi)?;
    if cfg!(debug_assertions) && quandle.field().order().pow(phi.arity() as u32 + 1) <= 1 << 12 {
        debug_assert_eq!(d, delta_pointwise(quandle, phi)?);
    }
    Ok(d.is_zero())
}

/// Some `ψ ∈ C^{n-1}` with `δψ = φ`, solved weight block by weight block.
pub fn is_coboundary(quandle: &AlexanderFQuandle, phi: &UCochain) -> Result<Option<UCochain>> {
    check_cochain(quandle, phi)?;
    let f = quandle.field();
    let n = phi.arity();
    if phi.is_zero() {
        return Ok(Some(UCochain::zero(f, n.saturating_sub(1).max(1))));
    }
    if n < 2 || phi.terms().any(|(e, _)| e.iter().all(|&x| x == 0)) {
        return Ok(None);
    }
    let cur = CochainSpaceBasis::new(f, n);
    let prev = CochainSpaceBasis::new(f, n - 1);
    let coords = cur.coords(phi)?;
    let mut touched: Vec<Weight> = phi.terms().map(|(e, _)| weight_of(f, e)).collect();
    touched.sort();
    touched.dedup();

    let mut witness = UCochain::zero(f, n - 1);
    for w in &touched {
        let rows = cur.block(w);
        let cols = prev.block(w);
        let b: Vec<Elem> = rows.iter().map(|&g| coords[g]).collect();
        let mut m = GFqMatrix::zeros(f, rows.len(), cols.len());
        for (j, img) in block_images(quandle, DeltaRoute::Poly, &prev, cols, &cur)?
            .iter()
            .enumerate()
        {
            for &(i, c) in img {
                m.set(i, j, c);
            }
        }
        match m.solve(&b)? {
            None => return Ok(None),
            Some(x) => witness = witness.add(&prev.block_cochain(w, &x))?,
        }
    }
    debug_assert_eq!(&delta_poly(quandle, &witness)?, phi);
    Ok(Some(witness))
}

pub fn classes_equal(quandle: &AlexanderFQuandle, phi: &UCochain, psi: &UCochain) -> Result<bool> {
    Ok(is_coboundary(quandle, &phi.sub(psi)?)?.is_some())
}

/// Whether the cochains are linearly independent modulo `B^n`. Only the
/// weight blocks they touch are built.
pub fn independent_mod_coboundaries(
    quandle: &AlexanderFQuandle,
    cochains: &[UCochain],
) -> Result<bool> {
    let Some(first) = cochains.first() else {
        return Ok(true);
    };
    let f = quandle.field();
    let n = first.arity();
    for phi in cochains {
        check_cochain(quandle, phi)?;
        if phi.arity() != n {
            return Err(Error::ArityMismatch {
                expected: n,
                got: phi.arity(),
            });
        }
    }
    let cur = CochainSpaceBasis::new(f, n);
    let prev = (n >= 2).then(|| CochainSpaceBasis::new(f, n - 1));
    let coords = cochains
        .iter()
        .map(|phi| cur.coords(phi))
        .collect::<Result<Vec<_>>>()?;
    let mut touched: Vec<Weight> = cochains
        .iter()
        .flat_map(|phi| {
            phi.terms()
                .map(|(e, _)| weight_of(f, e))
                .collect::<Vec<_>>()
        })
        .collect();
    touched.sort();
    touched.dedup();

    let echelons = touched
        .par_iter()
        .map(|w| {
            let size = cur.block(w).len();
            let mut ech = new_echelon(f, size);
            if let Some(prev) = &prev {
                for img in block_images(quandle, DeltaRoute::Poly, prev, prev.block(w), &cur)? {
                    ech.insert(&dense(size, &img));
                }
            }
            Ok(ech)
        })
        .collect::<Result<Vec<_>>>()?;

    let width: usize = touched.iter().map(|w| cur.block(w).len()).sum();
    let mut chosen = new_echelon(f, width);
    for c in &coords {
        let mut v = Vec::with_capacity(width);
        for (w, ech) in touched.iter().zip(&echelons) {
            let local: Vec<Elem> = cur.block(w).iter().map(|&g| c[g]).collect();
            v.extend(ech.reduce(&local));
        }
        if !chosen.insert(&v) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example(q: u32, beta_pow: u64) -> AlexanderFQuandle {
        let f = FieldSpec::with_order(q).unwrap();
        let w = f.primitive_element();
        AlexanderFQuandle::new(&f, w, f.pow(w, beta_pow)).unwrap()
    }

    fn mono(f: &FieldSpec, e: &[u64]) -> UCochain {
        UCochain::monomial(f, e.len(), e, Elem::ONE).unwrap()
    }

    #[test]
    fn basis_sizes_and_indexing() {
        let f4 = FieldSpec::with_order(4).unwrap();
        assert_eq!(CochainSpaceBasis::new(&f4, 1).len(), 3);
        assert_eq!(CochainSpaceBasis::new(&f4, 2).len(), 15);
        assert_eq!(CochainSpaceBasis::new(&f4, 3).len(), 48);
        assert_eq!(CochainSpaceBasis::new(&f4, 4).len(), 4 * 3 * 3 * 4);
        let f2 = FieldSpec::with_order(2).unwrap();
        let b = CochainSpaceBasis::new(&f2, 1);
        assert_eq!(b.monomials().len(), 1);
        for q in [4, 9] {
            let f = FieldSpec::with_order(q).unwrap();
            for n in 1..=4 {
                let b = CochainSpaceBasis::new(&f, n);
                for (i, e) in b.monomials().iter().enumerate() {
                    assert_eq!(b.index_of(e), Some(i));
                }
                let sizes = block_sizes(&f, n);
                assert_eq!(sizes.values().sum::<u64>(), b.len() as u64);
                for (w, &s) in &sizes {
                    assert_eq!(b.block(w).len() as u64, s);
                }
            }
        }
        let b3 = CochainSpaceBasis::new(&f4, 3);
        assert_eq!(b3.index_of(&[1, 0, 1]), None);
        assert_eq!(b3.index_of(&[1, 4, 1]), None);
    }

    #[test]
    fn delta_matrix_squares_to_zero() {
        for (q, b) in [(4, 2), (8, 4)] {
            let qd = example(q, b);
            for n in 1..=2 {
                let d1 = delta_matrix(&qd, n).unwrap();
                let d2 = delta_matrix(&qd, n + 1).unwrap();
                assert!(d2.mul(&d1).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn golden_h2_f4() {
        let qd = example(4, 2);
        let f = qd.field().clone();
        let r = h_dim(&qd, 2, false).unwrap();
        assert_eq!(r.dim_h, 1);
        let rep = mono(&f, &[1, 2]);
        assert_eq!(r.representative_cochains, vec![rep.clone()]);
        assert!(is_cocycle(&qd, &rep).unwrap());
        assert!(!is_cocycle(&qd, &mono(&f, &[1, 1])).unwrap());
        assert!(is_coboundary(&qd, &rep).unwrap().is_none());
        let col = delta_matrix(&qd, 2).unwrap();
        let j = CochainSpaceBasis::new(&f, 2).index_of(&[1, 2]).unwrap();
        assert!(col.column(j).iter().all(|e| e.is_zero()));
    }

    #[test]
    fn golden_f8() {
        let qd = example(8, 4);
        let f = qd.field().clone();
        assert_eq!(h_dim(&qd, 2, false).unwrap().dim_h, 0);
        let r3 = h_dim(&qd, 3, false).unwrap();
        assert_eq!(r3.dim_h, 1);
        let gen = mono(&f, &[1, 2, 4]);
        assert_eq!(r3.representative_cochains, vec![gen.clone()]);
        assert!(is_coboundary(&qd, &gen).unwrap().is_none());
        assert!(!classes_equal(&qd, &gen, &UCochain::zero(&f, 3)).unwrap());
    }

    #[test]
    fn coboundaries_have_witnesses() {
        let qd = example(4, 2);
        let f = qd.field().clone();
        let rho = mono(&f, &[3, 1])
            .add(&mono(&f, &[2, 0]).scale(f.primitive_element()))
            .unwrap();
        let d = delta_poly(&qd, &rho).unwrap();
        let w = is_coboundary(&qd, &d).unwrap().unwrap();
        assert_eq!(delta_poly(&qd, &w).unwrap(), d);
        let rep = mono(&f, &[1, 1, 1]);
        assert!(classes_equal(&qd, &rep, &rep.add(&d).unwrap()).unwrap());
        assert!(is_coboundary(&qd, &UCochain::zero(&f, 3))
            .unwrap()
            .is_some());
        assert_eq!(
            is_cocycle(&qd, &mono(&f, &[1, 0, 1])).unwrap_err(),
            Error::NotQuandleCochain
        );
    }

    #[test]
    fn routes_agree_on_dimensions() {
        for (q, b) in [(4, 2), (4, 1), (3, 1)] {
            let qd = example(q, b);
            for n in 1..=3 {
                let poly = h_dim(&qd, n, false).unwrap();
                let opts = HDimOptions {
                    route: DeltaRoute::Pointwise,
                    representatives: false,
                    ..HDimOptions::default()
                };
                let point = h_dim_with(&qd, n, &opts).unwrap();
                assert_eq!((poly.dim_z, poly.dim_b), (point.dim_z, point.dim_b));
                assert!(poly.dim_b <= poly.dim_z);
                let total = CochainSpaceBasis::new(qd.field(), n).len();
                let rank = delta_matrix(&qd, n).unwrap().rank();
                assert_eq!(total, rank + poly.dim_z);
                for rep in &poly.representative_cochains {
                    assert!(is_cocycle(&qd, rep).unwrap());
                    assert!(is_coboundary(&qd, rep).unwrap().is_none());
                }
            }
        }
    }

    #[test]
    fn resource_estimate_grows() {
        let f16 = FieldSpec::with_order(16).unwrap();
        assert!(estimate_bytes(&f16, 4) < MEMORY_CEILING);
        let f32 = FieldSpec::with_order(32).unwrap();
        assert!(estimate_bytes(&f32, 4) > estimate_bytes(&f16, 4));
        let f7 = FieldSpec::with_order(7).unwrap();
        let big = FieldSpec::new(2, 10, &[1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1]).unwrap();
        assert!(estimate_bytes(&f7, 3) < estimate_bytes(&big, 3));
        let qd = AlexanderFQuandle::new(&big, big.primitive_element(), big.one()).unwrap();
        assert!(matches!(
            h_dim(&qd, 4, false),
            Err(Error::ResourceLimit { .. })
        ));
    }
}
