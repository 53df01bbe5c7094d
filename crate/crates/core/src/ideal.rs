//! W-graph ideals: suffix-closed element lists together with the tab /
//! descents arrays that are the sole input to the q-polynomial recursion.
//!
//! Constructors cover the families the theory supports: the regular ideal
//! (all of W generated by the longest element), Deodhar's parabolic ideals
//! D_J in both variants, Specht ideals in type A, one-dimensional ideals,
//! and ideals induced from a parabolic subgroup.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::coxeter::{
    gens_conjugate_in, min_coset_rep_longest, suffix_closure, CoxeterGroup, GenSet, Perm, TypeA,
};
use crate::tableaux::{enumerate_syt, j_lambda, tableau_length, word_of, Partition, TabClass};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IdealError {
    /// Some element of the ideal has a right descent in J, violating the
    /// requirement that the ideal lies in D_J.
    #[error("J is not contained in Pos(ideal): element #{element} has right descent s{gen}")]
    JNotInPos { element: usize, gen: usize },
    /// One-dimensional ideals need J1 and J2 non-conjugate inside W_{J1 u J2}.
    #[error("s{0} and s{1} are conjugate in the parabolic subgroup; no such one-dimensional module")]
    ConjugacyViolation(usize, usize),
    #[error("J1 and J2 must be disjoint")]
    OverlappingGenerators,
    /// The inner table passed to `induced_ideal` is not a W_K-ideal table for
    /// the requested K.
    #[error("inner ideal is not compatible with K: {0}")]
    InvalidInner(String),
    #[error("embedding requires a consecutive generator run; {0:?} is not one")]
    NonConsecutiveK(GenSet),
}

/// Classification of one (generator, element) cell of the table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Entry {
    /// s*w_j = w_k with l up; k is the 0-based partner index.
    StrongAsc(u32),
    /// s*w_j = w_k with l down.
    StrongDesc(u32),
    WeakAsc,
    WeakDesc,
}

/// The index-level data consumed by the W-graph engine: no group elements,
/// just the tab and descents arrays.
///
/// `tab` holds the signed encoding with 1-based indices, one stride
/// of `rank` entries per element: `j+1` for a weak ascent of w_j, `-(j+1)`
/// for a weak descent, and `k+1` when s*w_j = w_k. Cells for generators
/// outside `gens` (the parabolic a sub-table lives in) hold 0.
#[derive(Clone, PartialEq, Eq)]
pub struct TableCore {
    rank: usize,
    d: usize,
    j_set: GenSet,
    gens: GenSet,
    tab: Vec<i32>,
    descents: Vec<GenSet>,
    lengths: Vec<u32>,
}

impl TableCore {
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of elements.
    pub fn dim(&self) -> usize {
        self.d
    }

    /// The respect-set J of the ideal (equals descents of the identity).
    pub fn j_set(&self) -> GenSet {
        self.j_set
    }

    /// The generators over which this is an ideal; the full set except for
    /// sub-tables destined for induction.
    pub fn gens(&self) -> GenSet {
        self.gens
    }

    pub fn lengths(&self) -> &[u32] {
        &self.lengths
    }

    pub fn length(&self, j: usize) -> u32 {
        self.lengths[j]
    }

    pub fn descents(&self, j: usize) -> GenSet {
        self.descents[j]
    }

    pub fn raw_tab(&self, j: usize, s: usize) -> i32 {
        self.tab[j * self.rank + (s - 1)]
    }

    pub fn entry(&self, j: usize, s: usize) -> Entry {
        let v = self.raw_tab(j, s);
        debug_assert!(v != 0, "cell (s{s}, {j}) is outside gens");
        if v == j as i32 + 1 {
            Entry::WeakAsc
        } else if v == -(j as i32 + 1) {
            Entry::WeakDesc
        } else {
            let k = v.unsigned_abs() - 1;
            debug_assert!(v > 0);
            if k as usize > j {
                Entry::StrongAsc(k)
            } else {
                Entry::StrongDesc(k)
            }
        }
    }

    /// First (policy-least) strong descent of w_j with its partner, or None
    /// for the identity.
    pub fn strong_descent(&self, j: usize, last: bool) -> Option<(usize, u32)> {
        let mut found = None;
        for s in self.descents[j].iter() {
            if let Entry::StrongDesc(k) = self.entry(j, s) {
                if !last {
                    return Some((s, k));
                }
                found = Some((s, k));
            }
        }
        found
    }

    fn new_empty(rank: usize, d: usize, j_set: GenSet, gens: GenSet) -> Self {
        TableCore {
            rank,
            d,
            j_set,
            gens,
            tab: vec![0; d * rank],
            descents: vec![GenSet::empty(); d],
            lengths: vec![0; d],
        }
    }

    fn set(&mut self, j: usize, s: usize, entry: Entry) {
        let v = match entry {
            Entry::StrongAsc(k) | Entry::StrongDesc(k) => k as i32 + 1,
            Entry::WeakAsc => j as i32 + 1,
            Entry::WeakDesc => -(j as i32 + 1),
        };
        self.tab[j * self.rank + (s - 1)] = v;
        if matches!(entry, Entry::StrongDesc(_) | Entry::WeakDesc) {
            self.descents[j].insert(s);
        }
    }
}

impl fmt::Debug for TableCore {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "TableCore(d={}, rank={}, J={:?}, gens={:?})",
            self.d, self.rank, self.j_set, self.gens
        )
    }
}

/// Which constructor produced an ideal; carried through to exports.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Regular,
    Parabolic { j: GenSet, variant: ParabolicVariant },
    Specht { lambda: Vec<usize> },
    OneDim { j1: GenSet, j2: GenSet },
    Induced { k: GenSet, inner: Box<Family> },
    Custom,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParabolicVariant {
    /// With respect to the empty set; weak cells are all ascents
    /// (the module where T_u acts as q^l(u) on the inducing line).
    Psi,
    /// With respect to J itself; weak cells are all descents
    /// (T_u acts as (-q)^-l(u)).
    Phi,
}

/// A W-graph ideal over a concrete group backend: the ordered elements plus
/// the engine-facing [`TableCore`].
#[derive(Clone)]
pub struct IdealTable<G: CoxeterGroup> {
    group: G,
    elements: Vec<G::Elem>,
    index: HashMap<G::Elem, u32>,
    core: TableCore,
    family: Family,
}

impl<G: CoxeterGroup> IdealTable<G> {
    pub fn group(&self) -> &G {
        &self.group
    }

    pub fn elements(&self) -> &[G::Elem] {
        &self.elements
    }

    pub fn index_of(&self, w: &G::Elem) -> Option<u32> {
        self.index.get(w).copied()
    }

    pub fn core(&self) -> &TableCore {
        &self.core
    }

    pub fn dim(&self) -> usize {
        self.core.d
    }

    pub fn family(&self) -> &Family {
        &self.family
    }
}

impl<G: CoxeterGroup> fmt::Debug for IdealTable<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IdealTable({:?}, {:?})", self.family, self.core)
    }
}

/// Sorts elements by (length, canonical element order) - the ordering every
/// table uses so that i <= j implies l(w_i) <= l(w_j) with a deterministic
/// tiebreak.
fn sort_elements<G: CoxeterGroup>(group: &G, mut elements: Vec<G::Elem>) -> Vec<G::Elem> {
    elements.sort_by_cached_key(|w| (group.length(w), w.clone()));
    elements
}

/// Classifies every (s, element) cell for `s` in `gens`, producing the table
/// arrays. `elements` must be sorted and suffix-closed over `gens`.
fn classify<G: CoxeterGroup>(
    group: &G,
    gens: GenSet,
    j_resp: GenSet,
    elements: &[G::Elem],
    index: &HashMap<G::Elem, u32>,
) -> Result<TableCore, IdealError> {
    let rank = group.rank();
    let mut core = TableCore::new_empty(rank, elements.len(), j_resp, gens);
    for (j0, w) in elements.iter().enumerate() {
        core.lengths[j0] = group.length(w) as u32;
        for t in j_resp.iter() {
            if group.right_descends(w, t) {
                return Err(IdealError::JNotInPos {
                    element: j0,
                    gen: t,
                });
            }
        }
        for s in gens.iter() {
            let sw = group.left_mul_gen(s, w);
            let entry = match index.get(&sw) {
                Some(&k) => {
                    if group.length(&sw) > group.length(w) {
                        Entry::StrongAsc(k)
                    } else {
                        Entry::StrongDesc(k)
                    }
                }
                None => {
                    // sw > w automatically (the ideal is suffix closed); weak
                    // descent iff w^-1 s w lies in J, i.e. sw = w t for t in J.
                    let weak_desc = j_resp
                        .iter()
                        .any(|t| group.right_mul_gen(w, t) == sw);
                    if weak_desc {
                        Entry::WeakDesc
                    } else {
                        Entry::WeakAsc
                    }
                }
            };
            core.set(j0, s, entry);
        }
    }
    Ok(core)
}

fn assemble<G: CoxeterGroup>(
    group: G,
    gens: GenSet,
    j_resp: GenSet,
    elements: Vec<G::Elem>,
    family: Family,
) -> Result<IdealTable<G>, IdealError> {
    let elements = sort_elements(&group, elements);
    let index: HashMap<G::Elem, u32> = elements
        .iter()
        .enumerate()
        .map(|(i, e)| (e.clone(), i as u32))
        .collect();
    let core = classify(&group, gens, j_resp, &elements, &index)?;
    debug_assert_eq!(core.descents[0], j_resp);
    Ok(IdealTable {
        group,
        elements,
        index,
        core,
        family,
    })
}

/// Builds the ideal generated by `generators` (their suffix closure), as a
/// W-graph ideal candidate with respect to `j_resp`. Fails with `JNotInPos`
/// if some element has a right descent in J.
pub fn build_from_elements<G: CoxeterGroup>(
    group: &G,
    j_resp: GenSet,
    generators: &[G::Elem],
) -> Result<IdealTable<G>, IdealError> {
    let closure = suffix_closure(group, generators);
    assemble(
        group.clone(),
        GenSet::full(group.rank()),
        j_resp,
        closure,
        Family::Custom,
    )
}

/// The whole group as the ideal generated by the longest element, with
/// J = {} forced; this yields the Kazhdan-Lusztig W-graph of the regular
/// representation.
pub fn regular_ideal<G: CoxeterGroup>(group: &G) -> IdealTable<G> {
    let w_s = crate::coxeter::longest_element(group, GenSet::full(group.rank()));
    let mut table = build_from_elements(group, GenSet::empty(), &[w_s])
        .expect("regular ideal never violates J = {}");
    table.family = Family::Regular;
    table
}

/// Deodhar's parabolic module: the ideal D_J generated by d_J, either with
/// respect to {} (psi: weak cells ascend) or to J (phi: weak cells descend).
pub fn parabolic_ideal<G: CoxeterGroup>(
    group: &G,
    j: GenSet,
    variant: ParabolicVariant,
) -> IdealTable<G> {
    let d_j = min_coset_rep_longest(group, j);
    let j_resp = match variant {
        ParabolicVariant::Psi => GenSet::empty(),
        ParabolicVariant::Phi => j,
    };
    let mut table = build_from_elements(group, j_resp, &[d_j])
        .expect("D_J has no right descents in J by construction");
    table.family = Family::Parabolic { j, variant };
    table
}

/// The Specht ideal of shape lambda: elements in bijection with the standard
/// tableaux, classification read off the tableaux directly.
pub fn specht_ideal(shape: &Partition) -> IdealTable<TypeA> {
    let n = shape.n();
    let group = TypeA::new(n);
    let j = j_lambda(shape);
    let tableaux = enumerate_syt(shape);
    let elements: Vec<Perm> = tableaux.iter().map(word_of).collect();
    let index: HashMap<Perm, u32> = elements
        .iter()
        .enumerate()
        .map(|(i, e)| (e.clone(), i as u32))
        .collect();
    let rank = group.rank();
    let mut core = TableCore::new_empty(rank, elements.len(), j, GenSet::full(rank));
    for (j0, t) in tableaux.iter().enumerate() {
        core.lengths[j0] = tableau_length(t) as u32;
        for i in 1..n {
            let entry = match t.classify(i) {
                TabClass::WeakAsc => Entry::WeakAsc,
                TabClass::WeakDesc => Entry::WeakDesc,
                TabClass::StrongAsc | TabClass::StrongDesc => {
                    let partner = word_of(&t.swap_values(i));
                    let k = index[&partner];
                    // Index order decides ascent vs descent because the
                    // enumeration is length monotone.
                    if k as usize > j0 {
                        Entry::StrongAsc(k)
                    } else {
                        Entry::StrongDesc(k)
                    }
                }
            };
            core.set(j0, i, entry);
        }
    }
    IdealTable {
        group,
        elements,
        index,
        core,
        family: Family::Specht {
            lambda: shape.parts().to_vec(),
        },
    }
}

/// The one-element ideal of W_{J1 u J2} with weak descents J1 and weak
/// ascents J2; defined when no generator of J1 is conjugate to one of J2
/// inside the parabolic (odd-path criterion on the diagram).
pub fn one_dim_ideal<G: CoxeterGroup>(
    group: &G,
    j1: GenSet,
    j2: GenSet,
) -> Result<IdealTable<G>, IdealError> {
    if !j1.intersection(j2).is_empty() {
        return Err(IdealError::OverlappingGenerators);
    }
    let gens = j1.union(j2);
    for a in j1.iter() {
        for b in j2.iter() {
            if gens_conjugate_in(group, gens, a, b) {
                return Err(IdealError::ConjugacyViolation(a, b));
            }
        }
    }
    // `classify` marks every weak cell by conjugation into J1; for the
    // identity that is exactly s in J1, and the rest of gens ascend.
    let table = assemble(
        group.clone(),
        gens,
        j1,
        vec![group.identity()],
        Family::OneDim { j1, j2 },
    )?;
    debug_assert_eq!(table.core.descents[0], j1);
    Ok(table)
}

/// Re-indexes a type-A ideal table into a larger symmetric group, shifting
/// generators by `offset` (so its gens become a consecutive run there) and
/// extending permutations by fixed points.
pub fn embed_type_a(
    inner: &IdealTable<TypeA>,
    outer: &TypeA,
    offset: usize,
) -> Result<IdealTable<TypeA>, IdealError> {
    let m = inner.group().n();
    let n = outer.n();
    if offset + m > n + 1 {
        return Err(IdealError::InvalidInner(format!(
            "cannot embed S_{m} at offset {offset} into S_{n}"
        )));
    }
    let map_elem = |w: &Perm| -> Perm {
        let mut images: Vec<usize> = (1..=n).collect();
        for i in 1..=m {
            images[offset + i - 1] = offset + w.image(i);
        }
        Perm::from_images(&images).expect("shifted permutation stays a permutation")
    };
    let shift_set =
        |g: GenSet| -> GenSet { g.iter().map(|s| s + offset).collect() };
    let elements: Vec<Perm> = inner.elements().iter().map(map_elem).collect();
    assemble(
        outer.clone(),
        shift_set(inner.core().gens()),
        shift_set(inner.core().j_set()),
        elements,
        inner.family.clone(),
    )
}

/// Induction: from a W_K-ideal table (gens = K) to the ideal
/// D_K * I_0 of the whole group, with the same respect-set J.
pub fn induced_ideal<G: CoxeterGroup>(
    group: &G,
    k: GenSet,
    inner: &IdealTable<G>,
) -> Result<IdealTable<G>, IdealError> {
    if inner.core().gens() != k {
        return Err(IdealError::InvalidInner(format!(
            "inner table is over gens {:?}, not K = {:?}",
            inner.core().gens(),
            k
        )));
    }
    if !inner.core().j_set().is_subset(k) {
        return Err(IdealError::InvalidInner("J must lie inside K".into()));
    }
    let d_k = suffix_closure(group, &[min_coset_rep_longest(group, k)]);
    let mut elements = Vec::with_capacity(d_k.len() * inner.dim());
    for d in &d_k {
        for z in inner.elements() {
            elements.push(group.multiply(d, z));
        }
    }
    let expected = elements.len();
    let table = assemble(
        group.clone(),
        GenSet::full(group.rank()),
        inner.core().j_set(),
        elements,
        Family::Induced {
            k,
            inner: Box::new(inner.family.clone()),
        },
    )?;
    if table.dim() != expected {
        return Err(IdealError::InvalidInner(format!(
            "product set D_K * I_0 collapsed: {} elements, expected {expected}",
            table.dim()
        )));
    }
    Ok(table)
}

/// Convenience: induce a Specht ideal of shape lambda sitting on the
/// consecutive run K of generators of S_n.
pub fn induced_specht_ideal(
    outer: &TypeA,
    k: GenSet,
    shape: &Partition,
) -> Result<IdealTable<TypeA>, IdealError> {
    let ks = k.indices();
    if ks.is_empty() {
        return Err(IdealError::NonConsecutiveK(k));
    }
    if ks.windows(2).any(|w| w[1] != w[0] + 1) {
        return Err(IdealError::NonConsecutiveK(k));
    }
    if shape.n() != ks.len() + 1 {
        return Err(IdealError::InvalidInner(format!(
            "shape {shape} is a partition of {}, K supports S_{}",
            shape.n(),
            ks.len() + 1
        )));
    }
    let inner = specht_ideal(shape);
    let embedded = embed_type_a(&inner, outer, ks[0] - 1)?;
    induced_ideal(outer, k, &embedded)
}

/// One violated invariant found by [`validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    MissingIdentity,
    DuplicateElements,
    NotLengthSorted { index: usize },
    NotSuffixClosed { element: usize, gen: usize },
    JNotInPos { element: usize, gen: usize },
    WrongClassification { element: usize, gen: usize },
    StrongPairMismatch { element: usize, gen: usize },
    DescentSetMismatch { element: usize },
    IdentityDescentsNotJ,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Full invariant audit of a table against its group: ordering, suffix
/// closure, J in Pos, cell-by-cell classification, strong-pair symmetry and
/// descent-set consistency. Returns all violations (empty means OK).
pub fn validate<G: CoxeterGroup>(table: &IdealTable<G>) -> Vec<Violation> {
    let mut out = Vec::new();
    let group = table.group();
    let core = table.core();
    let elements = table.elements();
    if elements.first() != Some(&group.identity()) {
        out.push(Violation::MissingIdentity);
    }
    {
        let mut seen = HashMap::new();
        for (i, e) in elements.iter().enumerate() {
            if seen.insert(e.clone(), i).is_some() {
                out.push(Violation::DuplicateElements);
                break;
            }
        }
    }
    for j0 in 1..elements.len() {
        if group.length(&elements[j0 - 1]) > group.length(&elements[j0])
            || core.lengths[j0] as usize != group.length(&elements[j0])
        {
            out.push(Violation::NotLengthSorted { index: j0 });
        }
    }
    for (j0, w) in elements.iter().enumerate() {
        for t in core.j_set().iter() {
            if group.right_descends(w, t) {
                out.push(Violation::JNotInPos {
                    element: j0,
                    gen: t,
                });
            }
        }
        let mut descents = GenSet::empty();
        for s in core.gens().iter() {
            let sw = group.left_mul_gen(s, w);
            let up = group.length(&sw) > group.length(w);
            let entry = core.entry(j0, s);
            match table.index_of(&sw) {
                Some(k) => {
                    if !up && entry != Entry::StrongDesc(k) {
                        out.push(Violation::WrongClassification {
                            element: j0,
                            gen: s,
                        });
                    }
                    if up && entry != Entry::StrongAsc(k) {
                        out.push(Violation::WrongClassification {
                            element: j0,
                            gen: s,
                        });
                    }
                    // Mutual inverse on the partner side.
                    let back = core.entry(k as usize, s);
                    let expect = if up {
                        Entry::StrongDesc(j0 as u32)
                    } else {
                        Entry::StrongAsc(j0 as u32)
                    };
                    if back != expect {
                        out.push(Violation::StrongPairMismatch {
                            element: j0,
                            gen: s,
                        });
                    }
                }
                None => {
                    if !up {
                        out.push(Violation::NotSuffixClosed {
                            element: j0,
                            gen: s,
                        });
                    }
                    let weak_desc = core
                        .j_set()
                        .iter()
                        .any(|t| group.right_mul_gen(w, t) == sw);
                    let expect = if weak_desc { Entry::WeakDesc } else { Entry::WeakAsc };
                    if entry != expect {
                        out.push(Violation::WrongClassification {
                            element: j0,
                            gen: s,
                        });
                    }
                }
            }
            if matches!(entry, Entry::StrongDesc(_) | Entry::WeakDesc) {
                descents.insert(s);
            }
        }
        if descents != core.descents(j0) {
            out.push(Violation::DescentSetMismatch { element: j0 });
        }
    }
    if core.descents(0) != core.j_set() {
        out.push(Violation::IdentityDescentsNotJ);
    }
    out
}

/// The simpler-definition property of singly-generated ideals: for w in the
/// ideal and s a weak ascent, every y in the ideal with y < sw already
/// satisfies y <= w. Returns offending (w, s, y) indices.
pub fn check_simplerdef<G: CoxeterGroup>(table: &IdealTable<G>) -> Vec<(usize, usize, usize)> {
    let group = table.group();
    let core = table.core();
    let mut bad = Vec::new();
    for (w0, w) in table.elements().iter().enumerate() {
        for s in core.gens().iter() {
            if core.entry(w0, s) != Entry::WeakAsc {
                continue;
            }
            let sw = group.left_mul_gen(s, w);
            for (y0, y) in table.elements().iter().enumerate() {
                if y != &sw && group.bruhat_leq(y, &sw) && !group.bruhat_leq(y, w) {
                    bad.push((w0, s, y0));
                }
            }
        }
    }
    bad
}
