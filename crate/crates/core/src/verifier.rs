//! Brute-force oracles: exhaustive homomorphism enumeration and executable
//! checks of the universal properties and of the closure remarks.
//!
//! Nothing here is on the construction path; every check recomputes its
//! answer from the definitions, so it can be used to cross-examine the
//! constructions in [`crate::free_extension`] and [`crate::z_extension`].

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::free_extension::{
    build_free_extension, lift_hom, map_extension, Extension, Pair, PairSpace,
};
use crate::hom::{hom_violation, HomKind, Homomorphism};
use crate::specialization::SpecSemilattice;
use crate::z_extension::{check_closure_preservation, ClosureSet};
use crate::Element;

/// Default bound on candidate maps examined by [`enumerate_homs`].
pub const DEFAULT_HOM_BUDGET: u64 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub instance: String,
    pub witness: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub property: String,
    pub instances: usize,
    pub failures: Vec<Failure>,
}

impl VerificationReport {
    pub fn new(property: impl Into<String>) -> Self {
        VerificationReport {
            property: property.into(),
            instances: 0,
            failures: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn fail(&mut self, instance: impl Into<String>, witness: impl Into<String>) {
        self.failures.push(Failure {
            instance: instance.into(),
            witness: witness.into(),
        });
    }

    /// Folds another report's counts and failures into this one.
    pub fn absorb(&mut self, other: VerificationReport) {
        self.instances += other.instances;
        self.failures.extend(other.failures);
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} ({} instance(s), {} failure(s))",
            self.property,
            if self.passed() { "PASS" } else { "FAIL" },
            self.instances,
            self.failures.len()
        )?;
        for fl in self.failures.iter().take(10) {
            write!(f, "\n  {}: {}", fl.instance, fl.witness)?;
        }
        Ok(())
    }
}

/// Backtracking over images of join-irreducibles, the rest of each map being
/// forced by join preservation. `visit` returns `false` to stop early.
fn search_homs(
    s: &SpecSemilattice,
    t: &SpecSemilattice,
    kind: HomKind,
    budget: u64,
    mut visit: impl FnMut(Vec<Element>) -> bool,
) -> Result<()> {
    if kind == HomKind::KHom {
        s.closure_table()?;
        t.closure_table()?;
    }
    let mut irr = s.base().join_irreducibles();
    let height = |x: Element| s.elements().filter(|&y| s.leq(y, x)).count();
    irr.sort_by_key(|&j| (height(j), j));
    let estimate = (t.size() as f64).powi(irr.len() as i32);
    if estimate > budget as f64 {
        return Err(Error::BudgetExceeded {
            estimate,
            bound: budget,
        });
    }
    let irr_below: Vec<Vec<usize>> = s
        .elements()
        .map(|x| (0..irr.len()).filter(|&k| s.leq(irr[k], x)).collect())
        .collect();
    let mut search = HomSearch {
        s,
        t,
        kind,
        images: vec![0; irr.len()],
        irr,
        irr_below,
        visit: &mut visit,
    };
    search.go(0)?;
    Ok(())
}

struct HomSearch<'a> {
    s: &'a SpecSemilattice,
    t: &'a SpecSemilattice,
    kind: HomKind,
    irr: Vec<Element>,
    irr_below: Vec<Vec<usize>>,
    images: Vec<Element>,
    visit: &'a mut dyn FnMut(Vec<Element>) -> bool,
}

impl HomSearch<'_> {
    /// Whether `img` for the `k`-th irreducible is compatible with the
    /// images already fixed.
    fn consistent(&self, k: usize, img: Element) -> bool {
        let (s, t) = (self.s, self.t);
        let uses_spec = self.kind != HomKind::Join;
        let j = self.irr[k];
        (0..k).all(|i| {
            let (ji, gi) = (self.irr[i], self.images[i]);
            (!s.leq(ji, j) || t.leq(gi, img))
                && (!s.leq(j, ji) || t.leq(img, gi))
                && (!uses_spec || !s.spec(ji, j) || t.spec(gi, img))
                && (!uses_spec || !s.spec(j, ji) || t.spec(img, gi))
                && (self.kind != HomKind::Embedding
                    || (gi != img
                        && (s.spec(ji, j) || !t.spec(gi, img))
                        && (s.spec(j, ji) || !t.spec(img, gi))))
        })
    }

    /// Returns `false` once the visitor asks to stop.
    fn go(&mut self, k: usize) -> Result<bool> {
        if k == self.irr.len() {
            let table: Vec<Element> = self
                .s
                .elements()
                .map(|x| {
                    self.t
                        .base()
                        .join_all(self.irr_below[x].iter().map(|&i| self.images[i]))
                        .expect("every element lies above an irreducible")
                })
                .collect();
            if hom_violation(self.s, self.t, &table, self.kind)?.is_none() {
                return Ok((self.visit)(table));
            }
            return Ok(true);
        }
        for img in self.t.elements() {
            if self.consistent(k, img) {
                self.images[k] = img;
                if !self.go(k + 1)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Every map `s -> t` of the requested kind, in lexicographic order of the
/// images of the join-irreducibles.
pub fn enumerate_homs(
    s: &SpecSemilattice,
    t: &SpecSemilattice,
    kind: HomKind,
) -> Result<Vec<Homomorphism>> {
    enumerate_homs_with_budget(s, t, kind, DEFAULT_HOM_BUDGET)
}

pub fn enumerate_homs_with_budget(
    s: &SpecSemilattice,
    t: &SpecSemilattice,
    kind: HomKind,
    budget: u64,
) -> Result<Vec<Homomorphism>> {
    let mut out = Vec::new();
    search_homs(s, t, kind, budget, |table| {
        out.push(Homomorphism::unchecked(table, kind));
        true
    })?;
    Ok(out)
}

/// Order invariants an isomorphism must preserve.
fn signature(s: &SpecSemilattice, x: Element) -> [usize; 4] {
    let count = |f: &dyn Fn(Element) -> bool| s.elements().filter(|&y| f(y)).count();
    [
        count(&|y| s.leq(y, x)),
        count(&|y| s.leq(x, y)),
        count(&|y| s.spec(y, x)),
        count(&|y| s.spec(x, y)),
    ]
}

/// A bijection preserving `∨` and `⊑` in both directions, if one exists.
///
/// Join-irreducibles go to join-irreducibles with equal order signatures;
/// the search fails with [`Error::BudgetExceeded`] after
/// [`DEFAULT_HOM_BUDGET`] visited nodes.
pub fn find_isomorphism(a: &SpecSemilattice, b: &SpecSemilattice) -> Result<Option<Homomorphism>> {
    let ja = a.base().join_irreducibles();
    let jb = b.base().join_irreducibles();
    if a.size() != b.size() || ja.len() != jb.len() {
        return Ok(None);
    }
    let sig_b: Vec<[usize; 4]> = jb.iter().map(|&y| signature(b, y)).collect();
    let candidates: Vec<Vec<Element>> = ja
        .iter()
        .map(|&x| {
            let sx = signature(a, x);
            (0..jb.len())
                .filter(|&k| sig_b[k] == sx)
                .map(|k| jb[k])
                .collect()
        })
        .collect();
    let irr_below: Vec<Vec<usize>> = a
        .elements()
        .map(|x| (0..ja.len()).filter(|&k| a.leq(ja[k], x)).collect())
        .collect();

    struct Search<'a> {
        a: &'a SpecSemilattice,
        b: &'a SpecSemilattice,
        ja: &'a [Element],
        candidates: &'a [Vec<Element>],
        irr_below: &'a [Vec<usize>],
        images: Vec<Element>,
        nodes: u64,
    }

    impl Search<'_> {
        fn go(&mut self, k: usize) -> Result<Option<Vec<Element>>> {
            self.nodes += 1;
            if self.nodes > DEFAULT_HOM_BUDGET {
                return Err(Error::BudgetExceeded {
                    estimate: self.nodes as f64,
                    bound: DEFAULT_HOM_BUDGET,
                });
            }
            if k == self.ja.len() {
                let table: Vec<Element> = self
                    .a
                    .elements()
                    .map(|x| {
                        self.b
                            .base()
                            .join_all(self.irr_below[x].iter().map(|&i| self.images[i]))
                            .expect("every element lies above an irreducible")
                    })
                    .collect();
                let hit = hom_violation(self.a, self.b, &table, HomKind::Embedding)?.is_none();
                return Ok(hit.then_some(table));
            }
            let j = self.ja[k];
            for idx in 0..self.candidates[k].len() {
                let y = self.candidates[k][idx];
                let fits = (0..k).all(|i| {
                    let (ji, yi) = (self.ja[i], self.images[i]);
                    yi != y
                        && self.a.leq(ji, j) == self.b.leq(yi, y)
                        && self.a.leq(j, ji) == self.b.leq(y, yi)
                        && self.a.spec(ji, j) == self.b.spec(yi, y)
                        && self.a.spec(j, ji) == self.b.spec(y, yi)
                });
                if fits {
                    self.images[k] = y;
                    if let Some(t) = self.go(k + 1)? {
                        return Ok(Some(t));
                    }
                }
            }
            Ok(None)
        }
    }

    let mut search = Search {
        a,
        b,
        ja: &ja,
        candidates: &candidates,
        irr_below: &irr_below,
        images: vec![0; ja.len()],
        nodes: 0,
    };
    Ok(search
        .go(0)?
        .map(|t| Homomorphism::unchecked(t, HomKind::Embedding)))
}

fn universal_check(
    name: &str,
    s: &SpecSemilattice,
    ext: &Extension,
    t: &SpecSemilattice,
    z: Option<&ClosureSet>,
) -> Result<VerificationReport> {
    t.closure_table()?;
    let mut etas = enumerate_homs(s, t, HomKind::Spec)?;
    if let Some(z) = z {
        etas.retain(|eta| {
            check_closure_preservation(s, z, t, eta)
                .map(|r| r.ok())
                .unwrap_or(false)
        });
    }
    let khoms = enumerate_homs(ext.result(), t, HomKind::KHom)?;
    let upsilon = ext.upsilon();
    let outcomes: Vec<Option<Failure>> = etas
        .par_iter()
        .map(|eta| {
            let instance = format!("η = {:?}", eta.table());
            let factoring: Vec<&Homomorphism> = khoms
                .iter()
                .filter(|g| s.elements().all(|a| g.apply(upsilon[a]) == eta.apply(a)))
                .collect();
            if factoring.len() != 1 {
                return Some(Failure {
                    instance,
                    witness: format!("{} K-homomorphisms factor η", factoring.len()),
                });
            }
            match lift_hom(ext, t, eta) {
                Ok(l) if l.table() == factoring[0].table() => None,
                Ok(l) => Some(Failure {
                    instance,
                    witness: format!(
                        "lift {:?} differs from the enumerated factorization {:?}",
                        l.table(),
                        factoring[0].table()
                    ),
                }),
                Err(e) => Some(Failure {
                    instance,
                    witness: format!("lift failed: {e}"),
                }),
            }
        })
        .collect();
    let mut report = VerificationReport::new(name);
    report.instances = etas.len();
    report.failures = outcomes.into_iter().flatten().collect();
    Ok(report)
}

/// For every spec-hom `η: s -> t`, exactly one K-homomorphism `g` out of the
/// extension satisfies `g(υ(a)) = η(a)`, and it equals [`lift_hom`]'s output.
pub fn check_universal_property(
    s: &SpecSemilattice,
    ext: &Extension,
    t: &SpecSemilattice,
) -> Result<VerificationReport> {
    if !ext.z().is_empty() {
        return Err(Error::malformed(
            "use check_universal_property_z for an extension over a closure set",
        ));
    }
    universal_check("universal property", s, ext, t, None)
}

/// As [`check_universal_property`], quantifying only over `η` preserving the
/// closures in `z`, for the extension built over `z`.
pub fn check_universal_property_z(
    s: &SpecSemilattice,
    z: &ClosureSet,
    ext: &Extension,
    t: &SpecSemilattice,
) -> Result<VerificationReport> {
    if ext.z() != z.members() {
        return Err(Error::malformed(
            "closure set differs from the one the extension was built over",
        ));
    }
    universal_check("universal property over Z", s, ext, t, Some(z))
}

/// Reflexivity of `⊑`, `Ka <= Kb ⟺ a ⊑ b`, the three-way equivalence
/// `a ⊑ b ⟺ a <= Kb ⟺ a ⊑ Kb`, and `KKb = Kb`.
pub fn check_remarks(s: &SpecSemilattice) -> VerificationReport {
    let mut r = VerificationReport::new("closure remarks");
    let k = s.closures();
    let l = |x: Element| s.label(x).to_string();
    for a in s.elements() {
        r.instances += 1;
        if !s.spec(a, a) {
            r.fail(format!("a = {}", l(a)), "a ⋢ a");
        }
        if k[a].is_none() {
            r.fail(format!("a = {}", l(a)), "closure missing");
        }
    }
    for b in s.elements() {
        let Some(kb) = k[b] else { continue };
        if s.closure_of(kb) != Some(kb) {
            r.fail(format!("b = {}", l(b)), format!("K K b != K b = {}", l(kb)));
        }
        for a in s.elements() {
            r.instances += 1;
            let (i, ii, iii) = (s.spec(a, b), s.leq(a, kb), s.spec(a, kb));
            if i != ii || ii != iii {
                r.fail(
                    format!("a = {}, b = {}", l(a), l(b)),
                    format!("a ⊑ b: {i}, a <= Kb: {ii}, a ⊑ Kb: {iii}"),
                );
            }
            if let Some(ka) = k[a] {
                if s.leq(ka, kb) != i {
                    r.fail(
                        format!("a = {}, b = {}", l(a), l(b)),
                        format!("Ka <= Kb is {} but a ⊑ b is {i}", s.leq(ka, kb)),
                    );
                }
            }
        }
    }
    r
}

/// The relation as bit rows, `rows[p]` holding every `q` with `p ≼ q`.
fn relation_rows(space: &PairSpace) -> Vec<Vec<u64>> {
    let n = space.len();
    let words = n.div_ceil(64);
    (0..n)
        .into_par_iter()
        .map(|i| {
            let p = space.pair(i);
            let mut row = vec![0u64; words];
            for j in 0..n {
                if space.relation(&p, &space.pair(j)) {
                    row[j / 64] |= 1 << (j % 64);
                }
            }
            row
        })
        .collect()
}

fn get(rows: &[Vec<u64>], i: usize, j: usize) -> bool {
    rows[i][j / 64] >> (j % 64) & 1 == 1
}

fn pair_label(space: &PairSpace, p: &Pair) -> String {
    p.display(space.source().base()).to_string()
}

/// Reflexivity and transitivity of the pair relation.
pub fn check_pair_preorder(space: &PairSpace) -> VerificationReport {
    let mut r = VerificationReport::new("pair relation is a preorder");
    let rows = relation_rows(space);
    let n = space.len();
    for i in 0..n {
        r.instances += 1;
        if !get(&rows, i, i) {
            r.fail(pair_label(space, &space.pair(i)), "not reflexive");
        }
        for j in 0..n {
            // p ≼ q requires every upper bound of q to be one of p
            if i != j && get(&rows, i, j) && rows[j].iter().zip(&rows[i]).any(|(q, p)| q & !p != 0)
            {
                let k = (0..n)
                    .find(|&k| get(&rows, j, k) && !get(&rows, i, k))
                    .unwrap();
                r.fail(
                    pair_label(space, &space.pair(i)),
                    format!(
                        "≼ {} ≼ {} but not transitively",
                        pair_label(space, &space.pair(j)),
                        pair_label(space, &space.pair(k))
                    ),
                );
            }
        }
    }
    r
}

/// `p ∼ p'` implies `p ∨ q ∼ p' ∨ q` for the componentwise join.
pub fn check_congruence(space: &PairSpace) -> VerificationReport {
    let mut r = VerificationReport::new("equivalence is a join congruence");
    let pairs: Vec<Pair> = space.pairs().collect();
    for p in &pairs {
        for p2 in &pairs {
            if p == p2 || !space.equivalent(p, p2) {
                continue;
            }
            for q in &pairs {
                r.instances += 1;
                if !space.equivalent(&space.join(p, q), &space.join(p2, q)) {
                    r.fail(
                        format!("{} ∼ {}", pair_label(space, p), pair_label(space, p2)),
                        format!("joins with {} differ", pair_label(space, q)),
                    );
                }
            }
        }
    }
    r
}

/// `p ≼ q` (or `≼^Z`) implies `K p ≼ K q` for the plain relation, hence `K`
/// is well defined on classes.
pub fn check_closure_well_defined(space: &PairSpace) -> VerificationReport {
    let mut r = VerificationReport::new("K is well defined on classes");
    for p in space.pairs() {
        for q in space.pairs() {
            if !space.relation(&p, &q) {
                continue;
            }
            r.instances += 1;
            if !space.preceq(&space.closure(&p), &space.closure(&q)) {
                r.fail(
                    format!("{} ≼ {}", pair_label(space, &p), pair_label(space, &q)),
                    "closures not related",
                );
            }
        }
    }
    r
}

/// Class order agrees with the pair relation on all pairs, not only on
/// representatives.
pub fn check_class_order(ext: &Extension) -> VerificationReport {
    let mut r = VerificationReport::new("class order matches pair relation");
    let space = ext.space();
    for p in space.pairs() {
        for q in space.pairs() {
            r.instances += 1;
            let by_class = ext.result().leq(ext.class_of(&p), ext.class_of(&q));
            if by_class != space.relation(&p, &q) {
                r.fail(
                    format!("{} / {}", pair_label(space, &p), pair_label(space, &q)),
                    format!("class order {by_class}, pair relation {}", !by_class),
                );
            }
        }
    }
    r
}

/// Clause (a1) decided by searching explicit witnesses `dj* ⊑ dj`, and
/// clause (a2) read literally. Exponential in `|q.adjoined|`.
pub fn preceq_by_witness_search(s: &SpecSemilattice, p: &Pair, q: &Pair) -> bool {
    let ds: Vec<Element> = q.adjoined.iter().collect();
    let choices: Vec<Vec<Element>> = ds
        .iter()
        .map(|&d| s.elements().filter(|&x| s.spec(x, d)).collect())
        .collect();
    fn search(
        s: &SpecSemilattice,
        choices: &[Vec<Element>],
        acc: Element,
        target: Element,
    ) -> bool {
        match choices.split_first() {
            None => s.leq(target, acc),
            Some((first, rest)) => first
                .iter()
                .any(|&x| search(s, rest, s.join(acc, x), target)),
        }
    }
    let a1 = search(s, &choices, q.base, p.base);
    let a2 = p.adjoined.iter().all(|b| ds.iter().any(|&d| s.spec(b, d)));
    a1 && a2
}

/// The closure-based decision of `≼` agrees with the witness search.
pub fn check_witness_elimination(s: &SpecSemilattice) -> Result<VerificationReport> {
    let space = PairSpace::new(s, &[])?;
    let mut r = VerificationReport::new("closure-based (a1) matches witness search");
    for p in space.pairs() {
        for q in space.pairs() {
            r.instances += 1;
            let fast = space.preceq(&p, &q);
            if fast != preceq_by_witness_search(s, &p, &q) {
                r.fail(
                    format!("{} ≼ {}", pair_label(&space, &p), pair_label(&space, &q)),
                    format!("closure test {fast}, witness search {}", !fast),
                );
            }
        }
    }
    Ok(r)
}

/// Relation-level facts about `≼^Z`: it agrees with `≼` on pairs with empty
/// second component; `(a,∅) ≼ q ≼^Z r` gives `(a,∅) ≼^Z r`; `∼` refines
/// `∼^Z`; and `K_S a = z ∈ Z` puts `(z,∅)` and `(a,{a})` in one class.
pub fn check_z_relation(s: &SpecSemilattice, z: &ClosureSet) -> Result<VerificationReport> {
    let zs = PairSpace::new(s, z.members())?;
    let plain = PairSpace::new(s, &[])?;
    let mut r = VerificationReport::new("Z relation facts");
    let pairs: Vec<Pair> = zs.pairs().collect();
    for a in s.elements() {
        let pa = Pair::plain(a);
        for q in &pairs {
            r.instances += 1;
            if zs.preceq_z(&pa, q) != plain.preceq(&pa, q) {
                r.fail(
                    format!("({}, ∅) vs {}", s.label(a), pair_label(&zs, q)),
                    "≼^Z and ≼ disagree",
                );
            }
            if !plain.preceq(&pa, q) {
                continue;
            }
            for t in &pairs {
                if zs.preceq_z(q, t) && !zs.preceq_z(&pa, t) {
                    r.fail(
                        format!("({}, ∅) ≼ {}", s.label(a), pair_label(&zs, q)),
                        format!("≼^Z {} but not chained", pair_label(&zs, t)),
                    );
                }
            }
        }
    }
    for p in &pairs {
        for q in &pairs {
            r.instances += 1;
            if plain.equivalent(p, q) && !zs.equivalent(p, q) {
                r.fail(
                    format!("{} ∼ {}", pair_label(&zs, p), pair_label(&zs, q)),
                    "not ∼^Z",
                );
            }
        }
    }
    for a in s.elements() {
        let Some(ka) = s.closure_of(a) else { continue };
        if z.contains(ka) {
            r.instances += 1;
            let (zp, ap) = (Pair::plain(ka), Pair::new(a, [a]));
            if !zs.equivalent(&zp, &ap) {
                r.fail(
                    format!("K {} = {}", s.label(a), s.label(ka)),
                    "(z, ∅) and (a, {a}) not ∼^Z",
                );
            }
        }
    }
    Ok(r)
}

/// `map_extension` sends identities to identities and every composite
/// `f.then(g)` over `a -> b -> c` to the composite of the images.
pub fn check_functoriality(
    a: &SpecSemilattice,
    b: &SpecSemilattice,
    c: &SpecSemilattice,
) -> Result<VerificationReport> {
    let exts = [
        build_free_extension(a)?,
        build_free_extension(b)?,
        build_free_extension(c)?,
    ];
    let mut r = VerificationReport::new("functoriality");
    for (i, e) in exts.iter().enumerate() {
        r.instances += 1;
        let id = Homomorphism::identity(e.source().size(), HomKind::Spec);
        let mapped = map_extension(e, e, &id)?;
        if mapped.table() != (0..e.class_count()).collect::<Vec<_>>() {
            r.fail(
                format!("object {i}"),
                format!("identity maps to {:?}", mapped.table()),
            );
        }
    }
    let fs = enumerate_homs(a, b, HomKind::Spec)?;
    let gs = enumerate_homs(b, c, HomKind::Spec)?;
    for f in &fs {
        let mf = map_extension(&exts[0], &exts[1], f)?;
        for g in &gs {
            r.instances += 1;
            let mg = map_extension(&exts[1], &exts[2], g)?;
            let whole = map_extension(&exts[0], &exts[2], &f.then(g))?;
            let parts = mf.then(&mg);
            if whole.table() != parts.table() {
                r.fail(
                    format!("f = {:?}, g = {:?}", f.table(), g.table()),
                    format!(
                        "composite maps to {:?}, composed images give {:?}",
                        whole.table(),
                        parts.table()
                    ),
                );
            }
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semilattice::JoinSemilattice;

    fn chain2() -> SpecSemilattice {
        SpecSemilattice::discrete(JoinSemilattice::chain(2))
    }

    #[test]
    fn spec_homs_on_two_chain() {
        let s = chain2();
        let homs = enumerate_homs(&s, &s, HomKind::Spec).unwrap();
        let tables: Vec<&[Element]> = homs.iter().map(|h| h.table()).collect();
        assert_eq!(tables, vec![&[0, 0][..], &[0, 1], &[1, 1]]);
    }

    #[test]
    fn embeddings_contain_identity() {
        let s = chain2();
        let homs = enumerate_homs(&s, &s, HomKind::Embedding).unwrap();
        assert!(homs.iter().any(|h| h.table() == [0, 1]));
    }

    #[test]
    fn singleton_source_has_one_join_hom_per_target_element() {
        let one = SpecSemilattice::discrete(JoinSemilattice::chain(1));
        let t = SpecSemilattice::discrete(JoinSemilattice::chain(4));
        assert_eq!(enumerate_homs(&one, &t, HomKind::Join).unwrap().len(), 4);
    }

    #[test]
    fn budget_is_enforced() {
        let s = SpecSemilattice::discrete(JoinSemilattice::chain(6));
        let err = enumerate_homs_with_budget(&s, &s, HomKind::Join, 1000).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { bound: 1000, .. }));
    }

    #[test]
    fn universal_property_on_two_chain() {
        let s = chain2();
        let e = build_free_extension(&s).unwrap();
        let r = check_universal_property(&s, &e, &s).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(r.instances, 3);
    }

    #[test]
    fn non_principal_target_rejected() {
        let s = chain2();
        let e = build_free_extension(&s).unwrap();
        let base =
            JoinSemilattice::from_fn(4, (0..4).map(|i| i.to_string()).collect(), |x, y| x | y);
        let broken = SpecSemilattice::unchecked(base, |x, y| x & !y == 0 || (y == 0 && x != 3));
        assert!(matches!(
            check_universal_property(&s, &e, &broken),
            Err(Error::NotPrincipal(_))
        ));
    }

    #[test]
    fn remarks_fail_on_broken_relation() {
        // ⊑ missing the order pair 0 ⊑ 1 and not reflexive at 1
        let s = SpecSemilattice::unchecked(JoinSemilattice::chain(2), |x, y| x == 0 && y == 0);
        let r = check_remarks(&s);
        assert!(!r.passed());
        assert!(r.failures.iter().any(|f| f.witness == "a ⋢ a"));
        assert!(check_remarks(&SpecSemilattice::discrete(JoinSemilattice::chain(1))).passed());
    }

    #[test]
    fn isomorphism_search() {
        let s = chain2();
        assert!(find_isomorphism(&s, &s).unwrap().is_some());
        let total = crate::specialization::complete_specialization(s.base(), &[(1, 0)]).unwrap();
        assert!(find_isomorphism(&s, &total).unwrap().is_none());
    }
}
