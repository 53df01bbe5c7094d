//! The W-graph engine: computes the q-polynomial table of an ideal by the
//! strong-descent recursion, extracts the edge weights mu and the vertex
//! colours tau, inverts the triangular basis change (p-table), recovers
//! classical Kazhdan-Lusztig polynomials for the regular/parabolic families,
//! and splits W-graphs into cells.
//!
//! The recursion computes column k (all q_{y, w_k}) from a single earlier
//! column m, where s w_k = w_m for a chosen strong descent s, plus the mu
//! values of columns before m:
//!
//! ```text
//!   q_{w_m, w_k} = 1
//!   q_{y, w_k}   = q * q_{y, w_m}                          if s ascends y
//!   q_{y, w_k}   = (mu_{y,w_m} - q_{y,w_m})/q + q_{sy,w_m}
//!                  + sum_x mu_{y,x} q_{x,w_m}              if s in SD(y)
//! ```
//!
//! (the same without the q_{sy,w_m} term when s in WD(y)), the sum running
//! over x with y < x < w_m and s not a descent of x. Since a column is
//! consumed only by the columns it partners, the engine can retire columns
//! once their last consumer is done (`retire` mode), which keeps the memory
//! of very large tables at a couple of length-layers plus the sparse mu
//! matrix.

use rayon::prelude::*;
use thiserror::Error;

use crate::coxeter::GenSet;
use crate::ideal::{Entry, TableCore};
use crate::laurent::{Coeff, LaurentPoly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WGraphError {
    #[error("element #{0} is not the identity but has no strong descent; table is not suffix closed")]
    NoStrongDescent(usize),
    #[error("q({j},{k}) required a division by q that does not divide; corrupted table")]
    NonDivisible { j: usize, k: usize },
    #[error("structural invariant violated at q({j},{k}): {reason}")]
    Invariant { j: usize, k: usize, reason: String },
    #[error("q-tables differ between first- and last-descent policies at ({j},{k})")]
    ChoiceDependence { j: usize, k: usize },
    #[error("p({j},{k}) does not convert to a classical KL polynomial: {reason}")]
    NotAPolynomial { j: usize, k: usize, reason: String },
}

/// Which strong descent the engine picks per column. Uniqueness of the
/// bar-fixed basis says the result cannot depend on this;
/// `choice_independence_audit` checks it does not.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DescentPolicy {
    LexFirst,
    LexLast,
}

#[derive(Clone, Copy, Debug)]
pub struct EngineOpts {
    pub policy: DescentPolicy,
    /// Free columns once no later column partners them (mu survives).
    pub retire_columns: bool,
    /// Keep live columns in a packed arena (u8 exponents, i32 coefficients)
    /// instead of per-entry vectors; only sensible together with
    /// `retire_columns`. Fails loudly if a value does not fit.
    pub pack_columns: bool,
    /// Candidate count above which a column's cells are computed in
    /// parallel. The output is identical either way.
    pub par_threshold: usize,
}

impl Default for EngineOpts {
    fn default() -> Self {
        EngineOpts {
            policy: DescentPolicy::LexFirst,
            retire_columns: false,
            pack_columns: false,
            par_threshold: 512,
        }
    }
}

type Col<C> = Vec<(u32, LaurentPoly<C>)>;

fn col_get<C: Coeff>(col: &[(u32, LaurentPoly<C>)], j: u32) -> Option<&LaurentPoly<C>> {
    col.binary_search_by_key(&j, |&(r, _)| r)
        .ok()
        .map(|i| &col[i].1)
}

/// A finished column squeezed into parallel arrays: term exponents as u8,
/// coefficients as i32, one offset per row. Cuts live memory of very large
/// runs by roughly 5x against the plain representation.
struct PackedCol {
    rows: Vec<u32>,
    offsets: Vec<u32>,
    exps: Vec<u8>,
    coeffs: Vec<i32>,
}

impl PackedCol {
    fn from_col<C: Coeff>(col: &Col<C>) -> Option<PackedCol> {
        let terms: usize = col.iter().map(|(_, p)| p.terms().len()).sum();
        let mut packed = PackedCol {
            rows: Vec::with_capacity(col.len()),
            offsets: Vec::with_capacity(col.len() + 1),
            exps: Vec::with_capacity(terms),
            coeffs: Vec::with_capacity(terms),
        };
        packed.offsets.push(0);
        for (row, poly) in col {
            packed.rows.push(*row);
            for (e, c) in poly.terms() {
                packed.exps.push(u8::try_from(*e).ok()?);
                packed.coeffs.push(c.to_i32()?);
            }
            packed.offsets.push(packed.exps.len() as u32);
        }
        Some(packed)
    }

    fn len(&self) -> usize {
        self.rows.len()
    }

    fn get<C: Coeff>(&self, j: u32) -> Option<LaurentPoly<C>> {
        let idx = self.rows.binary_search(&j).ok()?;
        let (a, b) = (self.offsets[idx] as usize, self.offsets[idx + 1] as usize);
        Some(LaurentPoly::from_terms(
            (a..b).map(|t| (self.exps[t] as i32, C::from(self.coeffs[t]))),
        ))
    }
}

/// Live-column storage: plain while small, packed for the streaming path.
enum Stored<C: Coeff> {
    Plain(Col<C>),
    Packed(PackedCol),
}

impl<C: Coeff> Stored<C> {
    fn len(&self) -> usize {
        match self {
            Stored::Plain(c) => c.len(),
            Stored::Packed(p) => p.len(),
        }
    }

    fn rows(&self) -> impl Iterator<Item = u32> + '_ {
        let plain = match self {
            Stored::Plain(c) => Some(c.iter().map(|&(r, _)| r)),
            Stored::Packed(_) => None,
        };
        let packed = match self {
            Stored::Packed(p) => Some(p.rows.iter().copied()),
            Stored::Plain(_) => None,
        };
        plain.into_iter().flatten().chain(packed.into_iter().flatten())
    }

    fn get(&self, j: u32) -> Option<std::borrow::Cow<'_, LaurentPoly<C>>> {
        match self {
            Stored::Plain(c) => col_get(c, j).map(std::borrow::Cow::Borrowed),
            Stored::Packed(p) => p.get(j).map(std::borrow::Cow::Owned),
        }
    }

    fn into_plain(self) -> Col<C> {
        match self {
            Stored::Plain(c) => c,
            Stored::Packed(_) => unreachable!("packed storage is only used when retiring"),
        }
    }
}

/// The sparse table of q polynomials: `cols[k]` holds the nonzero
/// q_{w_j, w_k} for j < k, sorted by j. Every entry lies in Z[q] and obeys
/// the degree bound deg <= l(w_k) - l(w_j) - 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QTable<C: Coeff> {
    cols: Vec<Col<C>>,
}

impl<C: Coeff> QTable<C> {
    /// Assembles a table from per-column sparse data (rows ascending, j < k,
    /// no zero polynomials). Used by the oracle-side constructions.
    pub fn from_cols(cols: Vec<Vec<(u32, LaurentPoly<C>)>>) -> Self {
        debug_assert!(cols
            .iter()
            .enumerate()
            .all(|(k, col)| col.windows(2).all(|w| w[0].0 < w[1].0)
                && col.last().is_none_or(|&(j, _)| (j as usize) < k)));
        QTable { cols }
    }

    pub fn dim(&self) -> usize {
        self.cols.len()
    }

    pub fn get(&self, j: usize, k: usize) -> Option<&LaurentPoly<C>> {
        if j >= k || k >= self.cols.len() {
            return None;
        }
        col_get(&self.cols[k], j as u32)
    }

    pub fn col(&self, k: usize) -> &[(u32, LaurentPoly<C>)] {
        &self.cols[k]
    }

    pub fn nonzero_count(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    /// All (j, k, poly) triples, k-major.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &LaurentPoly<C>)> {
        self.cols
            .iter()
            .enumerate()
            .flat_map(|(k, col)| col.iter().map(move |(j, p)| (*j as usize, k, p)))
    }

    /// The symmetric edge-weight convention: the constant term of
    /// q_{min, max}, zero on the diagonal and for incomparable pairs.
    pub fn mu_of(&self, i: usize, j: usize) -> C {
        if i == j {
            return C::zero();
        }
        let (lo, hi) = if i < j { (i, j) } else { (j, i) };
        self.get(lo, hi).map_or_else(C::zero, |p| p.constant_term())
    }
}

/// Sparse symmetric mu matrix stored once per unordered pair (lower index
/// first).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MuTable<C: Coeff> {
    lower: Vec<Vec<(u32, C)>>,
}

impl<C: Coeff> MuTable<C> {
    /// Builds a mu table from lower-triangular sparse rows; test helper and
    /// negative-control hook.
    pub fn from_lower(lower: Vec<Vec<(u32, C)>>) -> Self {
        MuTable { lower }
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn get(&self, i: usize, j: usize) -> C {
        if i == j {
            return C::zero();
        }
        let (lo, hi) = if i < j { (i, j) } else { (j, i) };
        self.lower[hi]
            .binary_search_by_key(&(lo as u32), |&(r, _)| r)
            .ok()
            .map_or_else(C::zero, |idx| self.lower[hi][idx].1.clone())
    }

    /// Neighbors below vertex k: (j, mu) with j < k, ascending.
    pub fn below(&self, k: usize) -> &[(u32, C)] {
        &self.lower[k]
    }

    /// All edges (i < j, mu != 0).
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, &C)> {
        self.lower
            .iter()
            .enumerate()
            .flat_map(|(j, row)| row.iter().map(move |(i, m)| (*i as usize, j, m)))
    }

    pub fn edge_count(&self) -> usize {
        self.lower.iter().map(Vec::len).sum()
    }

    pub fn max_abs(&self) -> C {
        let mut best = C::zero();
        for (_, _, m) in self.edges() {
            let a = m.abs();
            if a > best {
                best = a;
            }
        }
        best
    }

    pub fn from_qtable(q: &QTable<C>) -> Self {
        let lower = q
            .cols
            .iter()
            .map(|col| {
                col.iter()
                    .filter_map(|(j, p)| {
                        let c = p.constant_term();
                        if c.is_zero() {
                            None
                        } else {
                            Some((*j, c))
                        }
                    })
                    .collect()
            })
            .collect();
        MuTable { lower }
    }
}

/// p-table: c_w = b_w - q sum p_{y,w} b_y, the inverse triangular change of
/// basis. Same sparse layout as the q-table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PTable<C: Coeff> {
    cols: Vec<Col<C>>,
}

impl<C: Coeff> PTable<C> {
    pub fn dim(&self) -> usize {
        self.cols.len()
    }

    pub fn get(&self, j: usize, k: usize) -> Option<&LaurentPoly<C>> {
        if j >= k || k >= self.cols.len() {
            return None;
        }
        col_get(&self.cols[k], j as u32)
    }

    pub fn col(&self, k: usize) -> &[(u32, LaurentPoly<C>)] {
        &self.cols[k]
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &LaurentPoly<C>)> {
        self.cols
            .iter()
            .enumerate()
            .flat_map(|(k, col)| col.iter().map(move |(j, p)| (*j as usize, k, p)))
    }
}

/// A computed W-graph: vertex colours tau (the descent sets), symmetric edge
/// weights mu, and the q/p tables behind them.
#[derive(Clone, Debug)]
pub struct WGraphData<C: Coeff> {
    pub tau: Vec<GenSet>,
    pub mu: MuTable<C>,
    pub qtable: QTable<C>,
    pub ptable: PTable<C>,
}

impl<C: Coeff> WGraphData<C> {
    pub fn dim(&self) -> usize {
        self.tau.len()
    }
}

struct Engine<'a, C: Coeff> {
    core: &'a TableCore,
    opts: EngineOpts,
    cols: Vec<Option<Stored<C>>>,
    mu_cols: Vec<Vec<(u32, C)>>,
    mu_rows: Vec<Vec<(u32, C)>>,
    partner: Vec<(usize, u32)>,
    uses_left: Vec<u32>,
    max_abs_mu: C,
    entries: u64,
    peak_live: usize,
    live: usize,
    live_entries: usize,
    peak_live_entries: usize,
    total_terms: u64,
}

impl<'a, C: Coeff> Engine<'a, C> {
    #[allow(clippy::needless_range_loop)]
    fn new(core: &'a TableCore, opts: EngineOpts) -> Result<Self, WGraphError> {
        let d = core.dim();
        let mut partner = vec![(0usize, 0u32); d];
        let mut uses_left = vec![0u32; d];
        for k in 1..d {
            let (s, m) = core
                .strong_descent(k, opts.policy == DescentPolicy::LexLast)
                .ok_or(WGraphError::NoStrongDescent(k))?;
            partner[k] = (s, m);
            uses_left[m as usize] += 1;
        }
        Ok(Engine {
            core,
            opts,
            cols: (0..d).map(|_| None).collect(),
            mu_cols: vec![Vec::new(); d],
            mu_rows: vec![Vec::new(); d],
            partner,
            uses_left,
            max_abs_mu: C::zero(),
            entries: 0,
            peak_live: 0,
            live: 0,
            live_entries: 0,
            peak_live_entries: 0,
            total_terms: 0,
        })
    }

    fn run(mut self) -> Result<EngineOutput<C>, WGraphError> {
        let d = self.core.dim();
        for k in 0..d {
            let col = if k == 0 {
                Vec::new()
            } else {
                self.compute_column(k)?
            };
            self.check_column(k, &col)?;
            self.entries += col.len() as u64;
            for (j, poly) in &col {
                let c = poly.constant_term();
                if !c.is_zero() {
                    let a = c.abs();
                    if a > self.max_abs_mu {
                        self.max_abs_mu = a;
                    }
                    self.mu_cols[k].push((*j, c.clone()));
                    self.mu_rows[*j as usize].push((k as u32, c));
                }
            }
            self.live_entries += col.len();
            self.total_terms += col.iter().map(|(_, p)| p.terms().len() as u64).sum::<u64>();
            self.cols[k] = Some(if self.opts.pack_columns {
                Stored::Packed(PackedCol::from_col(&col).ok_or_else(|| {
                    WGraphError::Invariant {
                        j: 0,
                        k,
                        reason: "column does not fit the packed arena (exponent > 255 or |coefficient| > 2^31); rerun without packing".into(),
                    }
                })?)
            } else {
                Stored::Plain(col)
            });
            self.live += 1;
            self.peak_live = self.peak_live.max(self.live);
            self.peak_live_entries = self.peak_live_entries.max(self.live_entries);
            if self.opts.retire_columns {
                if k > 0 {
                    let m = self.partner[k].1 as usize;
                    self.uses_left[m] -= 1;
                    if self.uses_left[m] == 0 && self.cols[m].is_some() {
                        self.live_entries -= self.cols[m].as_ref().map_or(0, Stored::len);
                        self.cols[m] = None;
                        self.live -= 1;
                    }
                }
                if self.uses_left[k] == 0 && self.cols[k].is_some() {
                    self.live_entries -= self.cols[k].as_ref().map_or(0, Stored::len);
                    self.cols[k] = None;
                    self.live -= 1;
                }
            }
        }
        Ok(EngineOutput {
            cols: self.cols,
            mu_cols: self.mu_cols,
            max_abs_mu: self.max_abs_mu,
            entries: self.entries,
            peak_live_columns: self.peak_live,
            peak_live_entries: self.peak_live_entries,
            total_terms: self.total_terms,
        })
    }

    fn compute_column(&self, k: usize) -> Result<Col<C>, WGraphError> {
        let (s, m32) = self.partner[k];
        let m = m32 as usize;
        let col_m = self.cols[m]
            .as_ref()
            .expect("partner column retired too early");

        // Candidate rows that can possibly be nonzero: rows of column m,
        // their strong s-ascent partners (whose recursion pulls in
        // q_{sy, w_m}), and mu-neighbours below any non-s-descending row of
        // column m (the inner sum).
        let mut cand: Vec<u32> = Vec::with_capacity(2 * col_m.len());
        for x in col_m.rows() {
            cand.push(x);
            let xu = x as usize;
            if let Entry::StrongAsc(j2) = self.core.entry(xu, s) {
                cand.push(j2);
            }
            if !self.core.descents(xu).contains(s) {
                for (j, _) in &self.mu_cols[xu] {
                    if self.core.descents(*j as usize).contains(s) {
                        cand.push(*j);
                    }
                }
            }
        }
        cand.sort_unstable();
        cand.dedup();
        cand.retain(|&j| (j as usize) < k && j != m32);

        let cell = |j32: u32| -> Result<Option<(u32, LaurentPoly<C>)>, WGraphError> {
            let j = j32 as usize;
            let poly = if !self.core.descents(j).contains(s) {
                // s ascends w_j.
                match col_m.get(j32) {
                    Some(p) => p.shifted(1),
                    None => return Ok(None),
                }
            } else {
                let mut acc = LaurentPoly::zero();
                if let Some(qjm) = col_m.get(j32) {
                    let diff = &LaurentPoly::constant(qjm.constant_term()) - &*qjm;
                    acc.add_assign_ref(
                        &diff
                            .exact_div_q()
                            .map_err(|_| WGraphError::NonDivisible { j, k })?,
                    );
                }
                if let Entry::StrongDesc(i) = self.core.entry(j, s) {
                    if let Some(qim) = col_m.get(i) {
                        acc.add_assign_ref(&qim);
                    }
                }
                for (x, muv) in &self.mu_rows[j] {
                    if *x >= m32 {
                        break;
                    }
                    if self.core.descents(*x as usize).contains(s) {
                        continue;
                    }
                    if let Some(qxm) = col_m.get(*x) {
                        acc.add_scaled_shifted(&qxm, muv, 0);
                    }
                }
                acc
            };
            if poly.is_zero() {
                Ok(None)
            } else {
                Ok(Some((j32, poly)))
            }
        };

        #[allow(clippy::type_complexity)]
        let computed: Result<Vec<Option<(u32, LaurentPoly<C>)>>, WGraphError> =
            if cand.len() >= self.opts.par_threshold {
                cand.par_iter().map(|&j| cell(j)).collect()
            } else {
                cand.iter().map(|&j| cell(j)).collect()
            };
        let mut col: Col<C> = computed?.into_iter().flatten().collect();
        // Base case q_{w_m, w_k} = 1, dispatched outside the branches.
        let pos = col.partition_point(|&(r, _)| r < m32);
        col.insert(pos, (m32, LaurentPoly::one()));
        Ok(col)
    }

    /// Always-on structural checks: entries lie in Z[q], obey the degree
    /// bound, and weak descents of w_k only see rows they descend.
    fn check_column(&self, k: usize, col: &Col<C>) -> Result<(), WGraphError> {
        let lk = self.core.length(k);
        for (j, poly) in col {
            let j = *j as usize;
            if !poly.in_a_plus() {
                return Err(WGraphError::Invariant {
                    j,
                    k,
                    reason: format!("negative exponent in {poly}"),
                });
            }
            let bound = lk as i64 - self.core.length(j) as i64 - 1;
            if poly.degree().is_some_and(|deg| deg as i64 > bound) {
                return Err(WGraphError::Invariant {
                    j,
                    k,
                    reason: format!("degree of {poly} exceeds l(w)-l(y)-1 = {bound}"),
                });
            }
        }
        for s in self.core.descents(k).iter() {
            if !matches!(self.core.entry(k, s), Entry::WeakDesc) {
                continue;
            }
            for (j, _) in col {
                if !self.core.descents(*j as usize).contains(s) {
                    return Err(WGraphError::Invariant {
                        j: *j as usize,
                        k,
                        reason: format!("weak descent s{s} of column sees a non-descending row"),
                    });
                }
            }
        }
        Ok(())
    }
}

struct EngineOutput<C: Coeff> {
    cols: Vec<Option<Stored<C>>>,
    mu_cols: Vec<Vec<(u32, C)>>,
    max_abs_mu: C,
    entries: u64,
    peak_live_columns: usize,
    peak_live_entries: usize,
    total_terms: u64,
}

/// Computes the full q-table with the default policy.
pub fn compute_q_table<C: Coeff>(core: &TableCore) -> Result<QTable<C>, WGraphError> {
    compute_q_table_opts(core, EngineOpts::default())
}

pub fn compute_q_table_opts<C: Coeff>(
    core: &TableCore,
    opts: EngineOpts,
) -> Result<QTable<C>, WGraphError> {
    let opts = EngineOpts {
        retire_columns: false,
        pack_columns: false,
        ..opts
    };
    let out = Engine::<C>::new(core, opts)?.run()?;
    Ok(QTable {
        cols: out
            .cols
            .into_iter()
            .map(|c| c.expect("all columns retained").into_plain())
            .collect(),
    })
}

/// Statistics and mu matrix from a streaming run that retires q-columns as
/// soon as no later column needs them. Peak memory is the mu matrix plus a
/// couple of length-layers of columns.
#[derive(Clone, Debug)]
pub struct MuScan<C: Coeff> {
    pub mu: MuTable<C>,
    pub max_abs_mu: C,
    pub q_entries: u64,
    pub peak_live_columns: usize,
    pub peak_live_entries: usize,
    pub total_terms: u64,
}

pub fn mu_scan<C: Coeff>(core: &TableCore) -> Result<MuScan<C>, WGraphError> {
    mu_scan_opts(
        core,
        EngineOpts {
            retire_columns: true,
            pack_columns: true,
            ..EngineOpts::default()
        },
    )
}

pub fn mu_scan_opts<C: Coeff>(
    core: &TableCore,
    opts: EngineOpts,
) -> Result<MuScan<C>, WGraphError> {
    let out = Engine::<C>::new(core, opts)?.run()?;
    Ok(MuScan {
        mu: MuTable {
            lower: out.mu_cols,
        },
        max_abs_mu: out.max_abs_mu,
        q_entries: out.entries,
        peak_live_columns: out.peak_live_columns,
        peak_live_entries: out.peak_live_entries,
        total_terms: out.total_terms,
    })
}

/// Inverts the unitriangular relation b = (1 + q Q) c into c = (1 - q P) b
/// via p_{y,w} = q_{y,w} - sum_{y<x<w} q p_{y,x} q_{x,w}. The constant term
/// of every p equals the corresponding mu.
pub fn compute_p_table<C: Coeff>(q: &QTable<C>) -> PTable<C> {
    let d = q.dim();
    let mut cols: Vec<Col<C>> = Vec::with_capacity(d);
    for w in 0..d {
        let mut acc: std::collections::HashMap<u32, LaurentPoly<C>> =
            q.col(w).iter().map(|(j, p)| (*j, p.clone())).collect();
        for (x, qxw) in q.col(w) {
            for (y, pyx) in &cols[*x as usize] {
                let term = pyx.mul_ref(qxw).shifted(1);
                acc.entry(*y)
                    .or_insert_with(LaurentPoly::zero)
                    .add_assign_ref(&term.neg_ref());
            }
        }
        let mut col: Col<C> = acc.into_iter().filter(|(_, p)| !p.is_zero()).collect();
        col.sort_unstable_by_key(|&(j, _)| j);
        debug_assert!(col.iter().all(|(j, p)| {
            p.constant_term()
                == q.get(*j as usize, w)
                    .map_or_else(C::zero, |qp| qp.constant_term())
        }));
        cols.push(col);
    }
    PTable { cols }
}

/// Builds the W-graph of a validated table: tau from the descents array, mu
/// from the q-table constant terms, plus the q and p tables themselves.
pub fn build_wgraph<C: Coeff>(core: &TableCore) -> Result<WGraphData<C>, WGraphError> {
    let qtable = compute_q_table::<C>(core)?;
    let ptable = compute_p_table(&qtable);
    let mu = MuTable::from_qtable(&qtable);
    let tau = (0..core.dim()).map(|j| core.descents(j)).collect();
    Ok(WGraphData {
        tau,
        mu,
        qtable,
        ptable,
    })
}

/// Classical Kazhdan-Lusztig polynomials in the traditional variable,
/// recovered from p_{y,w} = (-q)^(l(w)-l(y)-1) P*_{y,w} by undoing
/// q -> q^-2. Only meaningful for the regular and parabolic families.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KlTable<C: Coeff> {
    cols: Vec<Col<C>>,
}

impl<C: Coeff> KlTable<C> {
    pub fn dim(&self) -> usize {
        self.cols.len()
    }

    /// P_{y,w}: 1 on the diagonal, 0 for pairs with no p-entry.
    pub fn get(&self, y: usize, w: usize) -> LaurentPoly<C> {
        if y == w {
            return LaurentPoly::one();
        }
        if y > w || w >= self.cols.len() {
            return LaurentPoly::zero();
        }
        col_get(&self.cols[w], y as u32)
            .cloned()
            .unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &LaurentPoly<C>)> {
        self.cols
            .iter()
            .enumerate()
            .flat_map(|(k, col)| col.iter().map(move |(j, p)| (*j as usize, k, p)))
    }
}

pub fn kl_polynomials<C: Coeff>(
    p: &PTable<C>,
    lengths: &[u32],
) -> Result<KlTable<C>, WGraphError> {
    let mut cols: Vec<Col<C>> = Vec::with_capacity(p.dim());
    for w in 0..p.dim() {
        let mut col: Col<C> = Vec::with_capacity(p.col(w).len());
        for (y, poly) in p.col(w) {
            let delta = lengths[w] as i32 - lengths[*y as usize] as i32 - 1;
            // p * (-q)^-delta must be a polynomial in q^-2.
            let mut star = poly.shifted(-delta);
            if delta.rem_euclid(2) == 1 {
                star = star.neg_ref();
            }
            let mut terms: Vec<(i32, C)> = Vec::with_capacity(star.terms().len());
            for (e, c) in star.terms() {
                if *e > 0 || e.rem_euclid(2) == 1 {
                    return Err(WGraphError::NotAPolynomial {
                        j: *y as usize,
                        k: w,
                        reason: format!("stray exponent {e} in {star}"),
                    });
                }
                terms.push((-e / 2, c.clone()));
            }
            col.push((*y, LaurentPoly::from_terms(terms)));
        }
        cols.push(col);
    }
    Ok(KlTable { cols })
}

/// Cells: strongly connected components of the digraph with an arc u -> v
/// when mu(u,v) != 0 and tau(u) is not a subset of tau(v). Components are
/// listed by minimal vertex, vertices ascending.
pub fn cell_decomposition<C: Coeff>(mu: &MuTable<C>, tau: &[GenSet]) -> Vec<Vec<u32>> {
    let d = tau.len();
    let mut fwd: Vec<Vec<u32>> = vec![Vec::new(); d];
    let mut back: Vec<Vec<u32>> = vec![Vec::new(); d];
    for (i, j, _) in mu.edges() {
        if !tau[i].is_subset(tau[j]) {
            fwd[i].push(j as u32);
            back[j].push(i as u32);
        }
        if !tau[j].is_subset(tau[i]) {
            fwd[j].push(i as u32);
            back[i].push(j as u32);
        }
    }
    // Kosaraju with explicit stacks.
    let mut order = Vec::with_capacity(d);
    let mut seen = vec![false; d];
    for start in 0..d {
        if seen[start] {
            continue;
        }
        let mut stack = vec![(start as u32, 0usize)];
        seen[start] = true;
        while let Some(&mut (v, ref mut idx)) = stack.last_mut() {
            if *idx < fwd[v as usize].len() {
                let u = fwd[v as usize][*idx];
                *idx += 1;
                if !seen[u as usize] {
                    seen[u as usize] = true;
                    stack.push((u, 0));
                }
            } else {
                order.push(v);
                stack.pop();
            }
        }
    }
    let mut comp = vec![usize::MAX; d];
    let mut cells: Vec<Vec<u32>> = Vec::new();
    for &v in order.iter().rev() {
        if comp[v as usize] != usize::MAX {
            continue;
        }
        let id = cells.len();
        let mut cell = vec![v];
        comp[v as usize] = id;
        let mut stack = vec![v];
        while let Some(x) = stack.pop() {
            for &u in &back[x as usize] {
                if comp[u as usize] == usize::MAX {
                    comp[u as usize] = id;
                    cell.push(u);
                    stack.push(u);
                }
            }
        }
        cell.sort_unstable();
        cells.push(cell);
    }
    cells.sort_by_key(|c| c[0]);
    cells
}

/// Recomputes the q-table under the opposite strong-descent policy and
/// demands exact equality.
pub fn choice_independence_audit<C: Coeff>(core: &TableCore) -> Result<(), WGraphError> {
    let first = compute_q_table_opts::<C>(
        core,
        EngineOpts {
            policy: DescentPolicy::LexFirst,
            ..EngineOpts::default()
        },
    )?;
    let last = compute_q_table_opts::<C>(
        core,
        EngineOpts {
            policy: DescentPolicy::LexLast,
            ..EngineOpts::default()
        },
    )?;
    for k in 0..first.dim() {
        if first.col(k) != last.col(k) {
            let j = first
                .col(k)
                .iter()
                .zip(last.col(k))
                .find(|(a, b)| a != b)
                .map(|(a, _)| a.0 as usize)
                .unwrap_or(0);
            return Err(WGraphError::ChoiceDependence { j, k });
        }
    }
    Ok(())
}
