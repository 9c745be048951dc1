//! The universal principal extension of a specialization semilattice.
//!
//! Elements are classes of pairs `(a, B)`, `B` a finite subset of the
//! carrier, read as `a ∨ K b1 ∨ .. ∨ K bh` with fresh closures `K bi`.
//! Pairs are preordered by `≼`:
//!
//! * (a1) `a <= c ∨ d1* ∨ .. ∨ dk*` for some choice of `dj* ⊑ dj`, and
//! * (a2) every `bi` satisfies `bi ⊑ dj` for some `j`.
//!
//! The set `{x | x ⊑ d}` is join-closed and contains `d`, so in a finite
//! structure its maximum `K_S d` is always the best choice for `dj*`.
//! Clause (a1) is therefore decided as `a <= c ∨ K_S d1 ∨ .. ∨ K_S dk`,
//! with `a <= c` when `B` is empty. The brute-force witness search lives in
//! [`crate::verifier`] as a cross-check.
//!
//! Compositions of maps are read diagrammatically throughout: in
//! `f.then(g)` the map `f` is applied first.

use std::cmp::Ordering;
use std::fmt;

use rayon::prelude::*;

use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::hom::{hom_violation, HomKind, Homomorphism};
use crate::semilattice::JoinSemilattice;
use crate::specialization::SpecSemilattice;
use crate::Element;

/// Hard ceiling on the source size regardless of the configured cap.
pub const MAX_SOURCE_SIZE: usize = 16;

/// An element `(a, B)` of `S × S^{<ω}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Pair {
    pub base: Element,
    pub adjoined: ElemSet,
}

impl Pair {
    pub fn new(base: Element, adjoined: impl IntoIterator<Item = Element>) -> Self {
        Pair {
            base,
            adjoined: adjoined.into_iter().collect(),
        }
    }

    pub fn plain(base: Element) -> Self {
        Pair {
            base,
            adjoined: ElemSet::empty(),
        }
    }

    /// Canonical order: base index first, then the sorted member sequence.
    pub fn canonical_cmp(&self, other: &Pair) -> Ordering {
        self.base
            .cmp(&other.base)
            .then_with(|| self.adjoined.cmp_sequence(other.adjoined))
    }

    /// `[a,{b,c}]` using the labels of `s`.
    pub fn display<'a>(&'a self, s: &'a JoinSemilattice) -> impl fmt::Display + 'a {
        PairDisplay {
            pair: self,
            labels: s,
        }
    }
}

struct PairDisplay<'a> {
    pair: &'a Pair,
    labels: &'a JoinSemilattice,
}

impl fmt::Display for PairDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let members: Vec<&str> = self
            .pair
            .adjoined
            .iter()
            .map(|b| self.labels.label(b))
            .collect();
        write!(
            f,
            "[{},{{{}}}]",
            self.labels.label(self.pair.base),
            members.join(",")
        )
    }
}

/// All pairs over a finite specialization semilattice, with the relations
/// `≼` and `≼^Z` evaluated in constant time per query from per-subset tables.
#[derive(Clone, Debug)]
pub struct PairSpace {
    source: SpecSemilattice,
    closures: Vec<Element>,
    /// `⋁ K_S d` over each subset, `None` for the empty subset.
    closure_join: Vec<Option<Element>>,
    /// `{b | b ⊑ d for some d in D}` for each subset `D`.
    covered: Vec<ElemSet>,
    z: Vec<Element>,
}

impl PairSpace {
    /// `z` must consist of closures of `source`; see
    /// [`crate::z_extension::ClosureSet`]. Pass `&[]` for the plain relation.
    pub fn new(source: &SpecSemilattice, z: &[Element]) -> Result<Self> {
        let n = source.size();
        if n > MAX_SOURCE_SIZE {
            return Err(Error::CapExceeded {
                size: n,
                cap: MAX_SOURCE_SIZE,
                detail: format!("pair space would have {}", pair_space_estimate(n)),
            });
        }
        let closures = source.closure_table()?;
        let subsets = 1usize << n;
        let below: Vec<ElemSet> = source
            .elements()
            .map(|d| source.elements().filter(|&b| source.spec(b, d)).collect())
            .collect();
        let mut closure_join = vec![None; subsets];
        let mut covered = vec![ElemSet::empty(); subsets];
        for mask in 1..subsets {
            let low = mask.trailing_zeros() as usize;
            let rest = mask & (mask - 1);
            closure_join[mask] = Some(match closure_join[rest] {
                Some(j) => source.join(j, closures[low]),
                None => closures[low],
            });
            covered[mask] = covered[rest].union(below[low]);
        }
        Ok(PairSpace {
            source: source.clone(),
            closures,
            closure_join,
            covered,
            z: z.to_vec(),
        })
    }

    pub fn source(&self) -> &SpecSemilattice {
        &self.source
    }

    pub fn z(&self) -> &[Element] {
        &self.z
    }

    pub fn source_closure(&self, x: Element) -> Element {
        self.closures[x]
    }

    pub fn len(&self) -> usize {
        self.source.size() << self.source.size()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn index(&self, p: &Pair) -> usize {
        (p.base << self.source.size()) | p.adjoined.bits() as usize
    }

    pub fn pair(&self, index: usize) -> Pair {
        let n = self.source.size();
        Pair {
            base: index >> n,
            adjoined: ElemSet::from_bits((index & ((1 << n) - 1)) as u64),
        }
    }

    pub fn pairs(&self) -> impl Iterator<Item = Pair> + '_ {
        (0..self.len()).map(|i| self.pair(i))
    }

    fn mask(p: &Pair) -> usize {
        p.adjoined.bits() as usize
    }

    /// `c ∨ K_S d1 ∨ .. ∨ K_S dk` for `q = (c, {d1..dk})`.
    pub fn bound(&self, q: &Pair) -> Element {
        match self.closure_join[Self::mask(q)] {
            Some(j) => self.source.join(q.base, j),
            None => q.base,
        }
    }

    /// Clause (a1), equivalently `(a, ∅) ≼ q`.
    pub fn base_below(&self, a: Element, q: &Pair) -> bool {
        self.source.leq(a, self.bound(q))
    }

    /// `p ≼ q`.
    pub fn preceq(&self, p: &Pair, q: &Pair) -> bool {
        self.base_below(p.base, q) && p.adjoined.is_subset(self.covered[Self::mask(q)])
    }

    /// `p ≼^Z q` for this space's `Z`: clause (c1) as above, and every
    /// `bi` either covered as in (a2) or placed under some `z ∈ Z` with
    /// `(z, ∅) ≼ q`.
    pub fn preceq_z(&self, p: &Pair, q: &Pair) -> bool {
        let bound = self.bound(q);
        if !self.source.leq(p.base, bound) {
            return false;
        }
        let covered = self.covered[Self::mask(q)];
        p.adjoined
            .iter()
            .filter(|&b| !covered.contains(b))
            .all(|b| {
                self.z
                    .iter()
                    .any(|&z| self.source.leq(b, z) && self.source.leq(z, bound))
            })
    }

    /// `≼` when `Z` is empty, `≼^Z` otherwise.
    pub fn relation(&self, p: &Pair, q: &Pair) -> bool {
        if self.z.is_empty() {
            self.preceq(p, q)
        } else {
            self.preceq_z(p, q)
        }
    }

    pub fn equivalent(&self, p: &Pair, q: &Pair) -> bool {
        self.relation(p, q) && self.relation(q, p)
    }

    /// Componentwise join `(a ∨ c, B ∪ D)`.
    pub fn join(&self, p: &Pair, q: &Pair) -> Pair {
        Pair {
            base: self.source.join(p.base, q.base),
            adjoined: p.adjoined.union(q.adjoined),
        }
    }

    /// `K(a, B) = (a, {a ∨ ⋁B})`.
    pub fn closure(&self, p: &Pair) -> Pair {
        let top = self
            .source
            .base()
            .join_all(std::iter::once(p.base).chain(p.adjoined.iter()))
            .expect("nonempty");
        Pair {
            base: p.base,
            adjoined: ElemSet::singleton(top),
        }
    }

    /// Semantics-preserving normal form: `a` absorbs `⋁B`, and members of
    /// `B` specialized to another member are dropped (keeping the lowest
    /// index among mutually specialized ones).
    pub fn normalize(&self, p: &Pair) -> Pair {
        let s = &self.source;
        let base = s
            .base()
            .join_all(std::iter::once(p.base).chain(p.adjoined.iter()))
            .expect("nonempty");
        let adjoined = p
            .adjoined
            .iter()
            .filter(|&bi| {
                !p.adjoined
                    .iter()
                    .any(|bj| bj != bi && s.spec(bi, bj) && (!s.spec(bj, bi) || bj < bi))
            })
            .collect();
        Pair { base, adjoined }
    }
}

/// `|S| · 2^|S|`, formatted for error messages.
pub fn pair_space_estimate(n: usize) -> String {
    format!("{n}·2^{n} = {} pairs", (n as u128) << n)
}

/// `p ≼ q` over `s`, without precomputed tables.
pub fn preceq(s: &SpecSemilattice, p: &Pair, q: &Pair) -> Result<bool> {
    check_pair(s, p)?;
    check_pair(s, q)?;
    let mut bound = q.base;
    for d in q.adjoined.iter() {
        let kd = s.closure_of(d).ok_or(Error::NotPrincipal(d))?;
        bound = s.join(bound, kd);
    }
    let a1 = s.leq(p.base, bound);
    let a2 = p
        .adjoined
        .iter()
        .all(|b| q.adjoined.iter().any(|d| s.spec(b, d)));
    Ok(a1 && a2)
}

/// `p ∼ q`: both `p ≼ q` and `q ≼ p`.
pub fn equivalent(s: &SpecSemilattice, p: &Pair, q: &Pair) -> Result<bool> {
    Ok(preceq(s, p, q)? && preceq(s, q, p)?)
}

pub(crate) fn check_pair(s: &SpecSemilattice, p: &Pair) -> Result<()> {
    s.base().check_element(p.base)?;
    if let Some(b) = p.adjoined.iter().find(|&b| b >= s.size()) {
        return Err(Error::malformed(format!(
            "pair member {b} is outside the carrier 0..{}",
            s.size()
        )));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BuildOptions {
    /// Largest source accepted; the pair space has `n · 2^n` entries.
    pub cap: usize,
    /// Quotient only normal-form pairs. The result is identical.
    pub normalize: bool,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            cap: 10,
            normalize: false,
        }
    }
}

/// Quotient of the pair space: the extension's carrier, operations, and the
/// maps tying it to its source.
#[derive(Clone, Debug)]
pub struct Extension {
    space: PairSpace,
    result: SpecSemilattice,
    closure: Vec<Element>,
    upsilon: Vec<Element>,
    class_of: Vec<Element>,
    representatives: Vec<Pair>,
}

impl Extension {
    pub fn source(&self) -> &SpecSemilattice {
        self.space.source()
    }

    pub fn space(&self) -> &PairSpace {
        &self.space
    }

    /// Designated closures; empty for the plain extension.
    pub fn z(&self) -> &[Element] {
        self.space.z()
    }

    /// The extension as a specialization semilattice over classes.
    pub fn result(&self) -> &SpecSemilattice {
        &self.result
    }

    pub fn class_count(&self) -> usize {
        self.result.size()
    }

    /// The closure operator on classes.
    pub fn closure(&self, class: Element) -> Element {
        self.closure[class]
    }

    pub fn closure_table(&self) -> &[Element] {
        &self.closure
    }

    pub fn class_of(&self, p: &Pair) -> Element {
        self.class_of[self.space.index(p)]
    }

    /// Canonical (least) pair of a class.
    pub fn representative(&self, class: Element) -> Pair {
        self.representatives[class]
    }

    /// Every pair in a class, in canonical order.
    pub fn members(&self, class: Element) -> Vec<Pair> {
        let mut out: Vec<Pair> = self
            .space
            .pairs()
            .filter(|p| self.class_of(p) == class)
            .collect();
        out.sort_by(Pair::canonical_cmp);
        out
    }

    /// The embedding `a ↦ [a, ∅]` as a table.
    pub fn upsilon(&self) -> &[Element] {
        &self.upsilon
    }

    /// The embedding as a homomorphism from the source into the result.
    pub fn upsilon_hom(&self) -> Homomorphism {
        Homomorphism::unchecked(self.upsilon.clone(), HomKind::Embedding)
    }

    /// `[a, ∅]`.
    pub fn embed(&self, a: Element) -> Result<Element> {
        self.source().base().check_element(a)?;
        Ok(self.upsilon[a])
    }

    pub fn class_label(&self, class: Element) -> String {
        self.representatives[class]
            .display(self.source().base())
            .to_string()
    }
}

/// Builds the universal principal extension with default options.
pub fn build_free_extension(s: &SpecSemilattice) -> Result<Extension> {
    build_free_extension_with(s, &BuildOptions::default())
}

pub fn build_free_extension_with(s: &SpecSemilattice, opts: &BuildOptions) -> Result<Extension> {
    build_quotient(s, &[], opts)
}

pub(crate) fn build_quotient(
    s: &SpecSemilattice,
    z: &[Element],
    opts: &BuildOptions,
) -> Result<Extension> {
    let n = s.size();
    if n > opts.cap.min(MAX_SOURCE_SIZE) {
        return Err(Error::CapExceeded {
            size: n,
            cap: opts.cap.min(MAX_SOURCE_SIZE),
            detail: format!("pair space would have {}", pair_space_estimate(n)),
        });
    }
    let report = s.validate_specialization()?;
    if !report.ok() {
        return Err(Error::Axioms {
            structure: "specialization relation",
            report,
        });
    }
    let space = PairSpace::new(s, z)?;
    let total = space.len();

    let mut canonical: Vec<usize> = (0..total).collect();
    canonical.sort_by(|&i, &j| space.pair(i).canonical_cmp(&space.pair(j)));

    let working: Vec<usize> = if opts.normalize {
        canonical
            .iter()
            .copied()
            .filter(|&i| {
                let p = space.pair(i);
                space.normalize(&p) == p
            })
            .collect()
    } else {
        canonical.clone()
    };
    let m = working.len();
    let words = m.div_ceil(64);
    let rows: Vec<Vec<u64>> = working
        .par_iter()
        .map(|&i| {
            let p = space.pair(i);
            let mut row = vec![0u64; words];
            for (k, &j) in working.iter().enumerate() {
                if space.relation(&p, &space.pair(j)) {
                    row[k / 64] |= 1 << (k % 64);
                }
            }
            row
        })
        .collect();
    let bit = |i: usize, j: usize| rows[i][j / 64] >> (j % 64) & 1 == 1;

    // mutual-≼ cells of the preorder
    const UNSET: usize = usize::MAX;
    let mut cell = vec![UNSET; m];
    let mut cells = 0;
    for i in 0..m {
        if cell[i] != UNSET {
            continue;
        }
        cell[i] = cells;
        for (j, c) in cell.iter_mut().enumerate().skip(i + 1) {
            if *c == UNSET && bit(i, j) && bit(j, i) {
                *c = cells;
            }
        }
        cells += 1;
    }
    let mut pair_cell = vec![UNSET; total];
    for (k, &i) in working.iter().enumerate() {
        pair_cell[i] = cell[k];
    }
    if opts.normalize {
        for i in 0..total {
            if pair_cell[i] == UNSET {
                let q = space.normalize(&space.pair(i));
                pair_cell[i] = pair_cell[space.index(&q)];
            }
        }
    }

    // number classes by their least pair in canonical order
    let mut renumber = vec![UNSET; cells];
    let mut representatives = Vec::with_capacity(cells);
    for &i in &canonical {
        let c = pair_cell[i];
        if renumber[c] == UNSET {
            renumber[c] = representatives.len();
            representatives.push(space.pair(i));
        }
    }
    let class_of: Vec<Element> = pair_cell.iter().map(|&c| renumber[c]).collect();
    let classes = representatives.len();
    let class = |p: &Pair| class_of[space.index(p)];

    let labels = representatives
        .iter()
        .map(|p| p.display(s.base()).to_string())
        .collect();
    let join = JoinSemilattice::from_fn(classes, labels, |x, y| {
        class(&space.join(&representatives[x], &representatives[y]))
    });
    let closure: Vec<Element> = representatives
        .iter()
        .map(|p| class(&space.closure(p)))
        .collect();
    let result = {
        let j = join.clone();
        SpecSemilattice::unchecked(join, |x, y| j.leq(x, closure[y]))
    };
    let upsilon = s.elements().map(|a| class(&Pair::plain(a))).collect();

    let ext = Extension {
        space,
        result,
        closure,
        upsilon,
        class_of,
        representatives,
    };
    self_check(&ext)?;
    Ok(ext)
}

/// Order on classes must match the pair relation on representatives, and
/// `K` must be a closure operator.
fn self_check(ext: &Extension) -> Result<()> {
    let r = &ext.result;
    let space = &ext.space;
    for x in r.elements() {
        for y in r.elements() {
            let (p, q) = (ext.representatives[x], ext.representatives[y]);
            if r.leq(x, y) != space.relation(&p, &q) {
                return Err(Error::Internal(format!(
                    "class order disagrees with the pair relation at {} / {}",
                    ext.class_label(x),
                    ext.class_label(y)
                )));
            }
            if r.leq(x, y) && !r.leq(ext.closure[x], ext.closure[y]) {
                return Err(Error::Internal(format!(
                    "K is not isotone at {}",
                    ext.class_label(x)
                )));
            }
        }
        let k = ext.closure[x];
        if !r.leq(x, k) || ext.closure[k] != k {
            return Err(Error::Internal(format!(
                "K is not a closure at {}",
                ext.class_label(x)
            )));
        }
    }
    Ok(())
}

fn lift_value(
    pair: &Pair,
    eta: &Homomorphism,
    target: &SpecSemilattice,
    target_closure: &[Element],
) -> Element {
    pair.adjoined.iter().fold(eta.apply(pair.base), |acc, b| {
        target.join(acc, target_closure[eta.apply(b)])
    })
}

/// The unique K-homomorphism `η̃` out of the extension with `υ` then `η̃`
/// equal to `η`:
///
/// `η̃([a, {b1..bh}]) = η(a) ∨ K_T η(b1) ∨ .. ∨ K_T η(bh)`.
///
/// For an extension over a nonempty `Z`, `η` must also preserve the
/// closures in `Z`.
pub fn lift_hom(
    ext: &Extension,
    target: &SpecSemilattice,
    eta: &Homomorphism,
) -> Result<Homomorphism> {
    let target_closure = target.closure_table()?;
    let source = ext.source();
    if let Some(witness) = hom_violation(source, target, eta.table(), HomKind::Spec)? {
        return Err(Error::NotHomomorphism {
            kind: HomKind::Spec.name(),
            witness,
        });
    }
    if !ext.z().is_empty() {
        let report =
            crate::z_extension::closure_preservation_report(source, ext.z(), target, eta.table())?;
        if let Some(v) = report.violations.first() {
            return Err(Error::ClosureNotPreserved(format!(
                "at {}",
                source.label(v.witness[0])
            )));
        }
    }
    let table: Vec<Element> = ext
        .representatives
        .iter()
        .map(|p| lift_value(p, eta, target, &target_closure))
        .collect();
    for p in ext.space.pairs() {
        let v = lift_value(&p, eta, target, &target_closure);
        if v != table[ext.class_of(&p)] {
            return Err(Error::Internal(format!(
                "lift is not well defined: {} and {} share a class but map to {} and {}",
                p.display(source.base()),
                ext.class_label(ext.class_of(&p)),
                target.label(v),
                target.label(table[ext.class_of(&p)])
            )));
        }
    }
    if let Some(w) = hom_violation(ext.result(), target, &table, HomKind::KHom)? {
        return Err(Error::Internal(format!(
            "lift is not a K-homomorphism: {w}"
        )));
    }
    Ok(Homomorphism::unchecked(table, HomKind::KHom))
}

/// The induced K-homomorphism `ψ̃` between extensions, the lift of
/// `ψ` then `υ_U`. It satisfies `υ_S` then `ψ̃` = `ψ` then `υ_U`.
pub fn map_extension(from: &Extension, to: &Extension, psi: &Homomorphism) -> Result<Homomorphism> {
    if let Some(witness) = hom_violation(from.source(), to.source(), psi.table(), HomKind::Spec)? {
        return Err(Error::NotHomomorphism {
            kind: HomKind::Spec.name(),
            witness,
        });
    }
    let eta = psi.then(&to.upsilon_hom());
    lift_hom(from, to.result(), &eta)
}
