//! Eigenvalue layouts `E` for block circulant matrices with circulant blocks.
//!
//! Column `ℓ` of the `n × m` layout is the DFT-ordered spectrum of the
//! circulant `S_ℓ = circ(idft(column ℓ))`; assembling the family gives a block
//! matrix with spectrum `{E}`. Writing `T(j, k)` for the sum of all entries
//! except `ε_{11}` weighted by `ω^{-kℓ} τ^{-jp}`, the first-row entry `j` of
//! `L_k` is `(ε_{11} + T(j, k)) / mn`, so the matrix is nonnegative exactly
//! when `ε_{11} ≥ Φ = max_{j,k} -Re T(j, k)`.
//!
//! Positions are zero-based here: `(0, 0)` is the Perron entry `ε_{11}`.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::block::{assemble, l_matrices, CirculantBlockMatrix, LFamily, SFamily};
use crate::circulant::Circulant;
use crate::dft::{idft_coefficients, root_pow};
use crate::guo::enumerate_assignments;
use crate::spectra::conjugate_pairing;
use crate::{math, CMatrix, Error, Result, Scalar};

/// Largest `n·m` searched exhaustively by [`min_perron`].
pub const EXHAUSTIVE_LIMIT: usize = 12;

/// Default candidate budget for [`min_perron`].
pub const DEFAULT_BUDGET: usize = 200_000;

#[derive(Debug, Clone, PartialEq)]
pub struct EMatrix {
    n: usize,
    m: usize,
    entries: Vec<Scalar>,
}

impl EMatrix {
    /// `entries` is row-major, `n` rows by `m` columns.
    pub fn new(n: usize, m: usize, entries: Vec<Scalar>) -> Result<Self> {
        if n == 0 || m == 0 {
            return Err(Error::invalid("layout must have at least one row and column"));
        }
        if entries.len() != n * m {
            return Err(Error::DimensionMismatch {
                expected: n * m,
                found: entries.len(),
            });
        }
        if entries.iter().any(|&z| !math::is_finite(z)) {
            return Err(Error::invalid("layout entries must be finite"));
        }
        Ok(EMatrix { n, m, entries })
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(n * m);
        for r in rows {
            if r.len() != m {
                return Err(Error::DimensionMismatch {
                    expected: m,
                    found: r.len(),
                });
            }
            entries.extend(r);
        }
        EMatrix::new(n, m, entries)
    }

    pub fn rows(&self) -> usize {
        self.n
    }

    pub fn cols(&self) -> usize {
        self.m
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.entries[i * self.m + j]
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        self.entries.chunks(self.m).map(<[Scalar]>::to_vec).collect()
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.n).map(|i| self.get(i, j)).collect()
    }

    /// `ε_{11}` as a real number.
    pub fn perron(&self) -> f64 {
        self.entries[0].re
    }

    pub fn with_perron(&self, value: f64) -> EMatrix {
        let mut out = self.clone();
        out.entries[0] = Scalar::new(value, 0.0);
        out
    }

    /// `max(0, -Σ Re ε)` over every entry but `ε_{11}`: the trace of a
    /// nonnegative realization is `ε_{11} + Σ ε ≥ 0`.
    pub fn trace_floor(&self) -> f64 {
        let rest: f64 = self.entries[1..].iter().map(|z| z.re).sum();
        (-rest).max(0.0)
    }

    fn scale(&self) -> f64 {
        self.entries.iter().map(|&z| math::abs(z)).fold(1.0, f64::max)
    }
}

/// Named verdicts for a layout.
#[derive(Debug, Clone, PartialEq)]
pub struct EMatrixReport {
    pub conjugation_closed: bool,
    pub perron_real_positive: bool,
    pub perron_max_modulus: bool,
    /// `circ(idft(column 0))` is real and entrywise nonnegative.
    pub first_column_realizable: bool,
    /// Column `m-ℓ` is the conjugate of column `ℓ`.
    pub conjugate_columns: bool,
    /// For even `m`, column `m/2` is real; vacuous otherwise.
    pub middle_column_real: bool,
    /// `S_{m-ℓ} = conj(S_ℓ)` for every `ℓ`, which is what makes every `L_k`
    /// real. Stronger than `conjugate_columns` once `n ≥ 3`; diagnostic only.
    pub real_blocks: bool,
    /// Smallest first-row entry of `circ(idft(column 0))`.
    pub first_column_min_entry: f64,
}

impl EMatrixReport {
    /// Every structural condition on the layout holds (`real_blocks` excluded).
    pub fn passes(&self) -> bool {
        self.conjugation_closed
            && self.perron_real_positive
            && self.perron_max_modulus
            && self.first_column_realizable
            && self.conjugate_columns
            && self.middle_column_real
    }
}

pub fn validate_ematrix(e: &EMatrix, tol: f64) -> EMatrixReport {
    let (n, m) = (e.n, e.m);
    let t = tol * e.scale();
    let p = e.entries[0];
    let rho = e.entries.iter().map(|&z| math::abs(z)).fold(0.0, f64::max);
    let col0 = idft_coefficients(&e.column(0)).expect("nonempty column");
    let first_column_min_entry = col0.iter().map(|z| z.re).fold(f64::INFINITY, f64::min);
    let first_column_realizable = col0.iter().all(|z| z.re >= -t && z.im.abs() <= t);
    let conjugate_columns = (1..=m / 2).all(|l| {
        (0..n).all(|i| math::abs(e.get(i, l) - e.get(i, m - l).conj()) <= t)
    });
    let middle_column_real = m % 2 == 1 || (0..n).all(|i| e.get(i, m / 2).im.abs() <= t);
    let real_blocks = (0..m).all(|l| {
        (0..n).all(|i| math::abs(e.get((n - i) % n, (m - l) % m) - e.get(i, l).conj()) <= t)
    });
    EMatrixReport {
        conjugation_closed: conjugate_pairing(&e.entries, t).is_some(),
        perron_real_positive: p.im.abs() <= t && p.re > 0.0,
        perron_max_modulus: p.re >= rho - t,
        first_column_realizable,
        conjugate_columns,
        middle_column_real,
        real_blocks,
        first_column_min_entry,
    }
}

/// `S_ℓ = circ(idft(column ℓ))`, so `σ(S_ℓ)` is column `ℓ` in DFT order.
pub fn s_family_from_ematrix(e: &EMatrix) -> SFamily {
    let mats = (0..e.m)
        .map(|l| {
            let row = idft_coefficients(&e.column(l)).expect("nonempty column");
            Circulant::from_row(row).expect("finite row").to_dense()
        })
        .collect();
    SFamily::new(mats).expect("equal square circulants")
}

/// `T(j, k)` for all `j < n`, `k < m`, indexed `[k][j]`.
fn offset_sums(e: &EMatrix) -> Vec<Vec<Scalar>> {
    let (n, m) = (e.n, e.m);
    (0..m)
        .map(|k| {
            (0..n)
                .map(|j| {
                    let mut acc = Scalar::new(0.0, 0.0);
                    for p in 0..n {
                        let tp = root_pow(-((j * p) as i64), n);
                        for l in 0..m {
                            if p == 0 && l == 0 {
                                continue;
                            }
                            acc += e.get(p, l) * tp * root_pow(-((k * l) as i64), m);
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// `Φ = max_{j,k} -Re T(j, k)`: the least `ε_{11}` for which every `L_k` is
/// nonnegative. Each `T(j, k)` must be real within `tol` (relative to the
/// largest entry modulus); otherwise the layout cannot give a real matrix and
/// the first offending `(j, k)` is reported.
pub fn phi(e: &EMatrix, tol: f64) -> Result<f64> {
    let t = tol * e.entries.iter().map(|&z| math::abs(z)).sum::<f64>().max(1.0);
    let mut best = f64::NEG_INFINITY;
    for (k, row) in offset_sums(e).iter().enumerate() {
        for (j, s) in row.iter().enumerate() {
            if s.im.abs() > t {
                return Err(Error::StructuralAsymmetry {
                    j,
                    k,
                    residue: s.im.abs(),
                });
            }
            best = best.max(-s.re);
        }
    }
    Ok(best)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Realization {
    pub matrix: CirculantBlockMatrix,
    pub s_family: SFamily,
    pub l_family: LFamily,
    pub phi: f64,
}

/// Assembles the block matrix with spectrum `{E}` from the circulant family
/// of the layout. Fails with [`Error::NotRealizable`] when `ε_{11} < Φ - tol`.
/// Imaginary parts at rounding level are dropped from the assembled blocks.
pub fn realize_ematrix(e: &EMatrix, tol: f64) -> Result<Realization> {
    let phi = phi(e, tol)?;
    let p = e.get(0, 0);
    if p.im.abs() > tol * e.scale() {
        return Err(Error::invalid("ε_11 must be real"));
    }
    if p.re < phi - tol * e.scale() {
        return Err(Error::NotRealizable {
            perron: p.re,
            phi,
        });
    }
    let s_family = s_family_from_ematrix(e);
    let l_family = l_matrices(&s_family);
    let l_real: Vec<CMatrix> = l_family
        .matrices()
        .iter()
        .map(|l| l.map(|z| Scalar::new(z.re, 0.0)))
        .collect();
    let l_family = LFamily::new(l_real)?;
    let matrix = crate::block::assemble_from_l(&l_family);
    debug_assert!(matrix.max_abs_diff(&assemble(&s_family)).is_ok());
    Ok(Realization {
        matrix,
        s_family,
        l_family,
        phi,
    })
}

/// A rearrangement of layout entries by position: `E(f)[pos] = E[source[pos]]`
/// with positions numbered row-major.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ENnssBijection {
    n: usize,
    m: usize,
    source: Vec<usize>,
}

impl ENnssBijection {
    pub fn identity(n: usize, m: usize) -> Self {
        ENnssBijection {
            n,
            m,
            source: (0..n * m).collect(),
        }
    }

    pub fn from_positions(n: usize, m: usize, source: Vec<usize>) -> Result<Self> {
        if source.len() != n * m {
            return Err(Error::DimensionMismatch {
                expected: n * m,
                found: source.len(),
            });
        }
        let mut seen = alloc::vec![false; n * m];
        for &s in &source {
            if s >= n * m || seen[s] {
                return Err(Error::invalid("positions must form a permutation"));
            }
            seen[s] = true;
        }
        Ok(ENnssBijection { n, m, source })
    }

    /// Exchanges columns `a` and `b`.
    pub fn swap_columns(n: usize, m: usize, a: usize, b: usize) -> Result<Self> {
        if a >= m || b >= m {
            return Err(Error::invalid("column index out of range"));
        }
        let source = (0..n * m)
            .map(|pos| {
                let (i, j) = (pos / m, pos % m);
                let j = if j == a { b } else if j == b { a } else { j };
                i * m + j
            })
            .collect();
        Ok(ENnssBijection { n, m, source })
    }

    fn from_pairing(n: usize, m: usize, positions: &[usize], values: &[Scalar], tol: f64) -> Result<Self> {
        let partner = conjugate_pairing(values, tol)
            .ok_or_else(|| Error::invalid("entries are not closed under conjugation"))?;
        let mut source: Vec<usize> = (0..n * m).collect();
        for (a, &pos) in positions.iter().enumerate() {
            source[pos] = positions[partner[a]];
        }
        Ok(ENnssBijection { n, m, source })
    }

    /// Sends every entry to its conjugate.
    pub fn conjugate(e: &EMatrix, tol: f64) -> Result<Self> {
        let positions: Vec<usize> = (0..e.n * e.m).collect();
        ENnssBijection::from_pairing(e.n, e.m, &positions, &e.entries, tol * e.scale())
    }

    /// Conjugates the entries of one column, leaving the rest in place.
    pub fn conjugate_column(e: &EMatrix, col: usize, tol: f64) -> Result<Self> {
        if col >= e.m {
            return Err(Error::invalid("column index out of range"));
        }
        let positions: Vec<usize> = (0..e.n).map(|i| i * e.m + col).collect();
        let values: Vec<Scalar> = positions.iter().map(|&p| e.entries[p]).collect();
        ENnssBijection::from_pairing(e.n, e.m, &positions, &values, tol * e.scale())
    }

    /// Moves row `p` to row `alpha[p]` in the listed columns.
    pub fn reorder_rows(n: usize, m: usize, alpha: &[usize], columns: &[usize]) -> Result<Self> {
        if alpha.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: alpha.len(),
            });
        }
        let mut source: Vec<usize> = (0..n * m).collect();
        for &j in columns {
            for p in 0..n {
                source[p * m + j] = alpha[p] * m + j;
            }
        }
        ENnssBijection::from_positions(n, m, source)
    }

    pub fn positions(&self) -> &[usize] {
        &self.source
    }

    pub fn fixes_perron(&self) -> bool {
        self.source[0] == 0
    }

    pub fn apply(&self, e: &EMatrix) -> Result<EMatrix> {
        if e.n != self.n || e.m != self.m {
            return Err(Error::DimensionMismatch {
                expected: self.n * self.m,
                found: e.n * e.m,
            });
        }
        let entries = self.source.iter().map(|&s| e.entries[s]).collect();
        Ok(EMatrix {
            n: e.n,
            m: e.m,
            entries,
        })
    }

    /// Applies `self` first, then `next`.
    pub fn then(&self, next: &ENnssBijection) -> ENnssBijection {
        ENnssBijection {
            n: self.n,
            m: self.m,
            source: next.source.iter().map(|&s| self.source[s]).collect(),
        }
    }
}

pub fn is_e_nnss(e: &EMatrix, f: &ENnssBijection, tol: f64) -> bool {
    f.fixes_perron() && f.apply(e).is_ok_and(|ef| validate_ematrix(&ef, tol).passes())
}

#[derive(Debug, Clone, PartialEq)]
pub struct BlockGuoResult {
    pub minimal_perron: f64,
    pub bijection: ENnssBijection,
    /// `E(f)` with `ε_{11}` replaced by `minimal_perron`.
    pub layout: EMatrix,
    pub witness: CirculantBlockMatrix,
    /// Smallest `Φ` over the layouts examined.
    pub min_phi: f64,
    pub trace_floor: f64,
    /// Every layout in the restricted search space was examined.
    pub exhaustive: bool,
    /// The trace floor is attained, so no nonnegative matrix with this
    /// spectrum has a smaller Perron entry.
    pub certified: bool,
    pub candidates: usize,
}

/// One value placed at several positions, possibly conjugated.
struct Slot {
    targets: Vec<(usize, bool)>,
    real_only: bool,
}

/// Slots of a layout whose columns satisfy both `col_{m-ℓ} = conj(col_ℓ)` and
/// the realness condition `S_{m-ℓ} = conj(S_ℓ)`; together these force
/// `col_ℓ[p] = col_ℓ[n-p]` for `ℓ ≥ 1` and `col_0[n-p] = conj(col_0[p])`.
fn layout_slots(n: usize, m: usize) -> Vec<Slot> {
    let pos = |i: usize, j: usize| i * m + j;
    let h = (n - 1) / 2;
    let mut slots = Vec::new();
    for p in 1..=h {
        slots.push(Slot { targets: alloc::vec![(pos(p, 0), false), (pos(n - p, 0), true)], real_only: false });
    }
    if n.is_multiple_of(2) && n > 1 {
        slots.push(Slot { targets: alloc::vec![(pos(n / 2, 0), false)], real_only: true });
    }
    for l in 1..m {
        let r = m - l;
        if l > r {
            break;
        }
        let middle = l == r;
        let mut rows: Vec<Vec<usize>> = alloc::vec![alloc::vec![0]];
        rows.extend((1..=h).map(|p| alloc::vec![p, n - p]));
        if n.is_multiple_of(2) && n > 1 {
            rows.push(alloc::vec![n / 2]);
        }
        for group in rows {
            let mut targets: Vec<(usize, bool)> = group.iter().map(|&p| (pos(p, l), false)).collect();
            if !middle {
                targets.extend(group.iter().map(|&p| (pos(p, r), true)));
            }
            slots.push(Slot { targets, real_only: middle });
        }
    }
    slots
}

/// Distinct values (within `tol`) of the non-Perron entries with multiplicities.
fn value_groups(values: &[Scalar], tol: f64) -> (Vec<Scalar>, Vec<usize>) {
    let mut reps: Vec<Scalar> = Vec::new();
    let mut counts: Vec<usize> = Vec::new();
    for &v in values {
        match reps.iter().position(|&r| math::abs(r - v) <= tol) {
            Some(g) => counts[g] += 1,
            None => {
                reps.push(v);
                counts.push(1);
            }
        }
    }
    (reps, counts)
}

/// Lexicographically smallest position permutation carrying `e` to `target`.
fn positions_for(e: &EMatrix, target: &[Scalar], tol: f64) -> Option<ENnssBijection> {
    let len = e.entries.len();
    let mut used = alloc::vec![false; len];
    let mut source = Vec::with_capacity(len);
    for &v in target {
        let s = (0..len).find(|&s| !used[s] && math::abs(e.entries[s] - v) <= tol)?;
        used[s] = true;
        source.push(s);
    }
    Some(ENnssBijection { n: e.n, m: e.m, source })
}

struct Search<'a> {
    e: &'a EMatrix,
    tol: f64,
    budget: usize,
    candidates: usize,
    exhausted: bool,
    best: Option<(f64, ENnssBijection, EMatrix)>,
}

impl Search<'_> {
    fn consider(&mut self, layout: EMatrix, f: Option<ENnssBijection>) {
        if self.candidates >= self.budget {
            self.exhausted = true;
            return;
        }
        self.candidates += 1;
        if !validate_ematrix(&layout, self.tol).passes() {
            return;
        }
        let Ok(value) = phi(&layout, self.tol) else {
            return;
        };
        let t = self.tol * self.e.scale();
        let Some(f) = f.or_else(|| positions_for(self.e, &layout.entries, t)) else {
            return;
        };
        let better = match &self.best {
            None => true,
            Some((b, bf, _)) => value < b - t || (value <= b + t && f < *bf),
        };
        if better {
            self.best = Some((value, f, layout));
        }
    }

    fn exhaustive(&mut self) {
        let (n, m) = (self.e.n, self.e.m);
        let t = self.tol * self.e.scale();
        let (reps, mut counts) = value_groups(&self.e.entries[1..], t);
        let conj: Vec<Option<usize>> = reps
            .iter()
            .map(|v| reps.iter().position(|&r| math::abs(r - v.conj()) <= t))
            .collect();
        let slots = layout_slots(n, m);
        let mut layout = self.e.entries.clone();
        self.fill(0, &slots, &reps, &conj, &mut counts, &mut layout, t);
    }

    #[allow(clippy::too_many_arguments)]
    fn fill(
        &mut self,
        s: usize,
        slots: &[Slot],
        reps: &[Scalar],
        conj: &[Option<usize>],
        counts: &mut [usize],
        layout: &mut Vec<Scalar>,
        t: f64,
    ) {
        if self.exhausted {
            return;
        }
        if s == slots.len() {
            let e = EMatrix { n: self.e.n, m: self.e.m, entries: layout.clone() };
            self.consider(e, None);
            return;
        }
        let slot = &slots[s];
        let plain = slot.targets.iter().filter(|x| !x.1).count();
        let conjugated = slot.targets.len() - plain;
        for g in 0..reps.len() {
            if slot.real_only && reps[g].im.abs() > t {
                continue;
            }
            let Some(cg) = conj[g] else { continue };
            let enough = if cg == g {
                counts[g] >= plain + conjugated
            } else {
                counts[g] >= plain && counts[cg] >= conjugated
            };
            if !enough {
                continue;
            }
            counts[g] -= plain;
            counts[cg] -= conjugated;
            for &(pos, c) in &slot.targets {
                layout[pos] = if c { reps[cg] } else { reps[g] };
            }
            self.fill(s + 1, slots, reps, conj, counts, layout, t);
            counts[g] += plain;
            counts[cg] += conjugated;
        }
    }

    /// Compositions of up to three generators: column swaps `ℓ ↔ m-ℓ`,
    /// conjugation of everything or of column 0, and cyclic-symmetric row
    /// reorderings of column 0 or of every column.
    fn generated(&mut self) {
        let (n, m) = (self.e.n, self.e.m);
        let mut gens = Vec::new();
        for l in 1..m {
            if l < m - l {
                gens.push(ENnssBijection::swap_columns(n, m, l, m - l).expect("in range"));
            }
        }
        if let Ok(f) = ENnssBijection::conjugate(self.e, self.tol) {
            gens.push(f);
        }
        if let Ok(f) = ENnssBijection::conjugate_column(self.e, 0, self.tol) {
            gens.push(f);
        }
        if (2..=crate::guo::MAX_ORDER).contains(&n) {
            let all: Vec<usize> = (0..m).collect();
            for alpha in enumerate_assignments(n).expect("order in range") {
                let a = alpha.as_slice();
                if a.iter().enumerate().all(|(i, &x)| i == x) {
                    continue;
                }
                gens.push(ENnssBijection::reorder_rows(n, m, a, &[0]).expect("valid"));
                if m > 1 {
                    gens.push(ENnssBijection::reorder_rows(n, m, a, &all).expect("valid"));
                }
            }
        }
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut frontier = alloc::vec![ENnssBijection::identity(n, m)];
        seen.insert(frontier[0].source.clone());
        for depth in 0..=3 {
            let mut next = Vec::new();
            for f in &frontier {
                if let Ok(layout) = f.apply(self.e) {
                    self.consider(layout, Some(f.clone()));
                }
                if self.exhausted {
                    return;
                }
                if depth < 3 {
                    for g in &gens {
                        let h = f.then(g);
                        if seen.insert(h.source.clone()) {
                            next.push(h);
                        }
                    }
                }
            }
            frontier = next;
        }
    }
}

/// Smallest Perron entry `ε_{11}` over rearrangements of the layout entries
/// that keep every structural condition, floored at the trace bound.
///
/// Up to `n·m = 12` the search covers every layout whose columns satisfy the
/// conjugation and realness conditions; larger layouts are searched through
/// compositions of generator rearrangements and the result is an upper bound.
/// At most `budget` layouts are examined.
pub fn min_perron(e: &EMatrix, budget: usize, tol: f64) -> Result<BlockGuoResult> {
    let mut search = Search {
        e,
        tol,
        budget: budget.max(1),
        candidates: 0,
        exhausted: false,
        best: None,
    };
    let full = e.n * e.m <= EXHAUSTIVE_LIMIT;
    if full {
        search.exhaustive();
    } else {
        search.generated();
    }
    let candidates = search.candidates;
    let exhaustive = full && !search.exhausted;
    let Some((min_phi, bijection, layout)) = search.best else {
        return if search.exhausted {
            Err(Error::SearchIncomplete { budget })
        } else {
            Err(Error::invalid("no rearrangement of the layout passes validation"))
        };
    };
    let trace_floor = e.trace_floor();
    let minimal_perron = min_phi.max(trace_floor);
    let t = tol * e.scale();
    let layout = layout.with_perron(minimal_perron);
    let witness = realize_ematrix(&layout, tol)?.matrix;
    Ok(BlockGuoResult {
        minimal_perron,
        bijection,
        layout,
        witness,
        min_phi,
        trace_floor,
        exhaustive,
        certified: min_phi <= trace_floor + t,
        candidates,
    })
}
