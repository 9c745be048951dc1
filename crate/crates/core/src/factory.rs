//! Builders for the standard example structures at finite scale, and a
//! seeded random generator for property tests.
//!
//! Inclusion modulo finite needs an infinite ground set. Here it is replaced
//! by inclusion modulo an ideal of a finite powerset, `x ⊑ y` iff
//! `x \ y ∈ I`, which runs on the same algebra.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::closure::ClosureSemilattice;
use crate::error::{Error, Result};
use crate::hom::{hom_violation, HomKind};
use crate::semilattice::JoinSemilattice;
use crate::specialization::{complete_specialization, SpecSemilattice};
use crate::Element;

const POINT_NAMES: &[&str] = &["p", "q", "r", "s", "t", "u"];

/// A finite set `X` of named points; subsets are bitmasks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GroundSet {
    size: usize,
}

impl GroundSet {
    pub const MAX_SIZE: usize = POINT_NAMES.len();

    pub fn new(size: usize) -> Result<Self> {
        if size > Self::MAX_SIZE {
            return Err(Error::CapExceeded {
                size,
                cap: Self::MAX_SIZE,
                detail: format!("ground set; powerset would have {} elements", 1u64 << size),
            });
        }
        Ok(GroundSet { size })
    }

    pub fn size(self) -> usize {
        self.size
    }

    pub fn point_name(i: usize) -> &'static str {
        POINT_NAMES[i]
    }

    pub fn point_index(&self, name: &str) -> Option<usize> {
        POINT_NAMES[..self.size].iter().position(|&p| p == name)
    }

    /// Element index of a subset is its bitmask (bit `i` = point `i`).
    pub fn subset_label(mask: usize) -> String {
        let names: Vec<&str> = (0..Self::MAX_SIZE)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| POINT_NAMES[i])
            .collect();
        format!("{{{}}}", names.join(","))
    }

    /// `(𝒫(X), ∪)`, with `2^size` elements.
    pub fn powerset(self) -> JoinSemilattice {
        let n = 1 << self.size;
        JoinSemilattice::from_fn(n, (0..n).map(Self::subset_label).collect(), |x, y| x | y)
    }
}

/// A downward- and union-closed family of subsets containing `∅`, stored by
/// its maximal members.
///
/// Union closure forces a single maximal member in the finite case, so a
/// list with two incomparable maxima is rejected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    ground: GroundSet,
    maximal: Vec<usize>,
}

impl Ideal {
    pub fn new(ground: GroundSet, generators: &[usize]) -> Result<Self> {
        let full = (1usize << ground.size) - 1;
        if generators.is_empty() {
            return Err(Error::malformed(
                "ideal must contain the empty set; list [[]] for the trivial ideal",
            ));
        }
        if let Some(&g) = generators.iter().find(|&&g| g & !full != 0) {
            return Err(Error::malformed(format!(
                "ideal member {} is not a subset of the ground set",
                GroundSet::subset_label(g)
            )));
        }
        let mut maximal: Vec<usize> = generators
            .iter()
            .copied()
            .filter(|&g| !generators.iter().any(|&h| h != g && g & !h == 0))
            .collect();
        maximal.sort_unstable();
        maximal.dedup();
        if maximal.len() > 1 {
            return Err(Error::malformed(format!(
                "ideal is not closed under union: {} ∪ {} is not a member",
                GroundSet::subset_label(maximal[0]),
                GroundSet::subset_label(maximal[1])
            )));
        }
        Ok(Ideal { ground, maximal })
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn maximal(&self) -> &[usize] {
        &self.maximal
    }

    pub fn contains(&self, x: usize) -> bool {
        self.maximal.iter().any(|&m| x & !m == 0)
    }
}

fn ground_check(pre: &[(usize, usize)], n: usize) -> Result<()> {
    for &(x, y) in pre {
        if x >= n || y >= n {
            return Err(Error::malformed(format!(
                "preorder pair ({x},{y}) is outside the ground set of size {n}"
            )));
        }
    }
    Ok(())
}

/// Finite topological space whose closed sets are the down-sets of `pre`.
///
/// A pair `(x, y)` in `pre` reads `x <= y`; the closure of a set is its
/// down-closure. Returns the induced specialization semilattice on `𝒫(X)`
/// and the closure semilattice it comes from.
pub fn powerset_from_preorder(
    ground: GroundSet,
    pre: &[(usize, usize)],
) -> Result<(SpecSemilattice, ClosureSemilattice)> {
    let n = ground.size();
    ground_check(pre, n)?;
    let mut rel = vec![false; n * n];
    for &(x, y) in pre {
        rel[x * n + y] = true;
    }
    for x in 0..n {
        if !rel[x * n + x] {
            return Err(Error::malformed(format!(
                "not a preorder: missing reflexive pair ({0},{0})",
                GroundSet::point_name(x)
            )));
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if rel[x * n + y] && rel[y * n + z] && !rel[x * n + z] {
                    return Err(Error::malformed(format!(
                        "not a preorder: ({0},{1}) and ({1},{2}) but not ({0},{2})",
                        GroundSet::point_name(x),
                        GroundSet::point_name(y),
                        GroundSet::point_name(z)
                    )));
                }
            }
        }
    }
    let base = ground.powerset();
    let down = |a: usize| -> usize {
        (0..n)
            .filter(|&x| (0..n).any(|y| a >> y & 1 == 1 && rel[x * n + y]))
            .fold(0, |acc, x| acc | 1 << x)
    };
    let k = base.elements().map(down).collect();
    let closure = ClosureSemilattice::new(base, k)?;
    let spec = closure.to_specialization_semilattice();
    Ok((spec, closure))
}

/// `𝒫(X)` with `x ⊑ y` iff `x \ y` belongs to the ideal.
pub fn mod_ideal(ideal: &Ideal) -> Result<SpecSemilattice> {
    SpecSemilattice::new(ideal.ground().powerset(), |x, y| ideal.contains(x & !y))
}

/// Which relation of the codomain is pulled back along the map.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum QuotientMode {
    /// `a ⊑ b` iff `φ(a) <= φ(b)`.
    #[default]
    Order,
    /// `a ⊑ b` iff `φ(a) ⊑ φ(b)`.
    Specialization,
}

/// Pulls the codomain's order (or specialization) back along a
/// join-homomorphism `phi: source -> base(target)`.
pub fn quotient_specialization(
    source: &JoinSemilattice,
    target: &SpecSemilattice,
    phi: &[Element],
    mode: QuotientMode,
) -> Result<SpecSemilattice> {
    let dom = SpecSemilattice::discrete(source.clone());
    if let Some(witness) = hom_violation(&dom, target, phi, HomKind::Join)? {
        return Err(Error::NotHomomorphism {
            kind: HomKind::Join.name(),
            witness,
        });
    }
    SpecSemilattice::new(source.clone(), |a, b| match mode {
        QuotientMode::Order => target.leq(phi[a], phi[b]),
        QuotientMode::Specialization => target.spec(phi[a], phi[b]),
    })
}

/// Largest carrier the random generator supports.
pub const RANDOM_MAX_SIZE: usize = 64;

/// Deterministic random specialization semilattice with `n` elements.
///
/// The carrier is a random union-closed family of `n` subsets of a small
/// ground set, grown one member at a time; the relation is the completion of
/// a few random seed pairs.
pub fn random_spec_semilattice(seed: u64, n: usize) -> Result<SpecSemilattice> {
    if n == 0 || n > RANDOM_MAX_SIZE {
        return Err(Error::CapExceeded {
            size: n,
            cap: RANDOM_MAX_SIZE,
            detail: "random structure size must be in 1..=64".into(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // n <= 2^ground guarantees a candidate exists at every step: a maximal
    // non-member can always be added without breaking union closure
    let ground = (usize::BITS - (n - 1).leading_zeros()).max(1) as usize + 1;
    let ground = ground.max(n.min(5));
    let universe = 1usize << ground;
    let mut family = vec![rng.random_range(0..universe)];
    while family.len() < n {
        let candidates: Vec<usize> = (0..universe)
            .filter(|x| !family.contains(x))
            .filter(|&x| {
                family
                    .iter()
                    .all(|&f| f | x == x || family.contains(&(f | x)))
            })
            .collect();
        family.push(candidates[rng.random_range(0..candidates.len())]);
    }
    family.sort_by_key(|&x| (x.count_ones(), x));
    let index = |mask: usize| {
        family
            .iter()
            .position(|&f| f == mask)
            .expect("union-closed")
    };
    let labels = family
        .iter()
        .map(|&m| {
            let names: Vec<String> = (0..ground)
                .filter(|i| m >> i & 1 == 1)
                .map(|i| format!("x{i}"))
                .collect();
            format!("{{{}}}", names.join(","))
        })
        .collect();
    let base = JoinSemilattice::from_fn(n, labels, |x, y| index(family[x] | family[y]));
    let seeds: Vec<(Element, Element)> = (0..rng.random_range(0..=n))
        .map(|_| (rng.random_range(0..n), rng.random_range(0..n)))
        .collect();
    complete_specialization(&base, &seeds)
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: usize = 0b01;
    const Q: usize = 0b10;
    const PQ: usize = 0b11;

    fn g(n: usize) -> GroundSet {
        GroundSet::new(n).unwrap()
    }

    #[test]
    fn discrete_preorder_gives_identity_closure() {
        let (s, c) = powerset_from_preorder(g(2), &[(0, 0), (1, 1)]).unwrap();
        assert_eq!(c.table(), &[0, 1, 2, 3]);
        assert_eq!(s, SpecSemilattice::discrete(g(2).powerset()));
    }

    #[test]
    fn total_preorder_gives_indiscrete_closure() {
        let (s, c) = powerset_from_preorder(g(2), &[(0, 0), (1, 1), (0, 1), (1, 0)]).unwrap();
        assert_eq!(c.table(), &[0, PQ, PQ, PQ]);
        assert!(s.spec(P, Q));
        assert_eq!(s.closure_of(P), Some(PQ));
    }

    #[test]
    fn sierpinski_down_closure() {
        // q <= p: K{p} = {p,q}, K{q} = {q}
        let (_, c) = powerset_from_preorder(g(2), &[(0, 0), (1, 1), (1, 0)]).unwrap();
        assert_eq!(c.closure(P), PQ);
        assert_eq!(c.closure(Q), Q);
    }

    #[test]
    fn non_preorder_rejected_with_witness() {
        let err = powerset_from_preorder(g(2), &[(0, 0)]).unwrap_err();
        assert!(err.to_string().contains("(q,q)"), "{err}");
        let err =
            powerset_from_preorder(g(3), &[(0, 0), (1, 1), (2, 2), (0, 1), (1, 2)]).unwrap_err();
        assert!(err.to_string().contains("(p,r)"), "{err}");
    }

    #[test]
    fn preorder_closure_is_additive() {
        let (_, c) =
            powerset_from_preorder(g(3), &[(0, 0), (1, 1), (2, 2), (1, 0), (2, 0)]).unwrap();
        let b = c.base();
        for x in b.elements() {
            for y in b.elements() {
                assert_eq!(c.closure(b.join(x, y)), b.join(c.closure(x), c.closure(y)));
            }
        }
    }

    #[test]
    fn trivial_and_full_ideals() {
        let s = mod_ideal(&Ideal::new(g(2), &[0]).unwrap()).unwrap();
        assert_eq!(s, SpecSemilattice::discrete(g(2).powerset()));
        let s = mod_ideal(&Ideal::new(g(2), &[PQ]).unwrap()).unwrap();
        assert!(s.elements().all(|x| s.elements().all(|y| s.spec(x, y))));
    }

    #[test]
    fn ideal_of_subsets_of_p() {
        let s = mod_ideal(&Ideal::new(g(3), &[P]).unwrap()).unwrap();
        assert!(s.spec(PQ, Q));
        assert!(!s.spec(Q, P));
    }

    #[test]
    fn ideal_validation() {
        assert!(Ideal::new(g(2), &[]).is_err());
        assert!(Ideal::new(g(2), &[P, Q]).is_err());
        assert!(Ideal::new(g(2), &[0b100]).is_err());
        assert_eq!(Ideal::new(g(2), &[P, 0, P]).unwrap().maximal(), &[P]);
    }

    #[test]
    fn quotient_identity_and_constant() {
        let base = g(2).powerset();
        let target = SpecSemilattice::discrete(base.clone());
        let s =
            quotient_specialization(&base, &target, &[0, 1, 2, 3], QuotientMode::Order).unwrap();
        assert_eq!(s, target);
        let s =
            quotient_specialization(&base, &target, &[3, 3, 3, 3], QuotientMode::Order).unwrap();
        assert!(s.elements().all(|x| s.elements().all(|y| s.spec(x, y))));
    }

    #[test]
    fn collapsing_p_matches_mod_ideal() {
        let base = g(2).powerset();
        let target = SpecSemilattice::discrete(base.clone());
        let phi: Vec<usize> = base.elements().map(|a| a & !P).collect();
        let s = quotient_specialization(&base, &target, &phi, QuotientMode::Order).unwrap();
        assert_eq!(s, mod_ideal(&Ideal::new(g(2), &[P]).unwrap()).unwrap());
    }

    #[test]
    fn quotient_by_specialization_variant() {
        let base = g(2).powerset();
        let target = mod_ideal(&Ideal::new(g(2), &[P]).unwrap()).unwrap();
        let id: Vec<usize> = base.elements().collect();
        let s = quotient_specialization(&base, &target, &id, QuotientMode::Specialization).unwrap();
        assert_eq!(s, target);
    }

    #[test]
    fn quotient_rejects_non_hom() {
        let base = g(2).powerset();
        let target = SpecSemilattice::discrete(base.clone());
        let err = quotient_specialization(&base, &target, &[3, 0, 0, 0], QuotientMode::Order);
        assert!(matches!(err, Err(Error::NotHomomorphism { .. })));
    }

    #[test]
    fn random_is_deterministic_and_valid() {
        for seed in 0..100 {
            let n = 1 + (seed as usize % 6);
            let s = random_spec_semilattice(seed, n).unwrap();
            assert_eq!(s.size(), n);
            assert!(s.validate_specialization().unwrap().ok(), "seed {seed}");
            assert_eq!(s, random_spec_semilattice(seed, n).unwrap());
        }
        assert_eq!(random_spec_semilattice(7, 1).unwrap().size(), 1);
        assert!(random_spec_semilattice(7, 0).is_err());
    }
}
