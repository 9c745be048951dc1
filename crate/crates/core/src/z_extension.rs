//! Extensions that keep a designated set `Z` of existing closures.
//!
//! The relation `≼^Z` relaxes clause (a2): a member `bi` of the left pair may
//! instead sit below some `z ∈ Z` with `(z, ∅) ≼ q`. The quotient, join,
//! closure and embedding are then formed exactly as in the plain case, and
//! `Z = ∅` gives back the plain extension.

use crate::error::{Error, Result};
use crate::free_extension::{
    build_quotient, check_pair, lift_hom, BuildOptions, Extension, Pair, PairSpace,
};
use crate::hom::{HomKind, Homomorphism};
use crate::report::{Axiom, AxiomReport};
use crate::specialization::SpecSemilattice;
use crate::Element;

/// A set of elements each equal to its own closure.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClosureSet {
    members: Vec<Element>,
}

impl ClosureSet {
    /// Rejects any member `z` with `K z != z` (or no closure at all).
    pub fn new(s: &SpecSemilattice, members: impl IntoIterator<Item = Element>) -> Result<Self> {
        let mut members: Vec<Element> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        for &z in &members {
            s.base().check_element(z)?;
            match s.closure_of(z) {
                Some(k) if k == z => {}
                Some(k) => return Err(Error::NotClosure(z, k)),
                None => return Err(Error::NotPrincipal(z)),
            }
        }
        Ok(ClosureSet { members })
    }

    pub fn empty() -> Self {
        ClosureSet::default()
    }

    /// Every closure of a principal `s`.
    pub fn all_closures(s: &SpecSemilattice) -> Result<Self> {
        let k = s.closure_table()?;
        ClosureSet::new(s, k)
    }

    pub fn members(&self) -> &[Element] {
        &self.members
    }

    pub fn contains(&self, x: Element) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// `p ≼^Z q`.
pub fn preceq_z(s: &SpecSemilattice, z: &ClosureSet, p: &Pair, q: &Pair) -> Result<bool> {
    check_pair(s, p)?;
    check_pair(s, q)?;
    let base_below = |a: Element| crate::free_extension::preceq(s, &Pair::plain(a), q);
    if !base_below(p.base)? {
        return Ok(false);
    }
    for b in p.adjoined.iter() {
        let alpha = q.adjoined.iter().any(|d| s.spec(b, d));
        if alpha {
            continue;
        }
        let mut beta = false;
        for &zz in z.members() {
            if s.leq(b, zz) && base_below(zz)? {
                beta = true;
                break;
            }
        }
        if !beta {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn build_z_extension(s: &SpecSemilattice, z: &ClosureSet) -> Result<Extension> {
    build_z_extension_with(s, z, &BuildOptions::default())
}

pub fn build_z_extension_with(
    s: &SpecSemilattice,
    z: &ClosureSet,
    opts: &BuildOptions,
) -> Result<Extension> {
    // re-validate against this s in case the set was built for another one
    let z = ClosureSet::new(s, z.members().iter().copied())?;
    build_quotient(s, z.members(), opts)
}

pub(crate) fn closure_preservation_report(
    s: &SpecSemilattice,
    z: &[Element],
    t: &SpecSemilattice,
    f: &[Element],
) -> Result<AxiomReport> {
    if f.len() != s.size() {
        return Err(Error::malformed(format!(
            "map has {} entries, domain has {} elements",
            f.len(),
            s.size()
        )));
    }
    let mut report = AxiomReport::default();
    for a in s.elements() {
        let Some(ka) = s.closure_of(a) else { continue };
        if z.binary_search(&ka).is_err() {
            continue;
        }
        t.base().check_element(f[a])?;
        match t.closure_of(f[a]) {
            Some(kfa) if kfa == f[ka] => {}
            _ => report.push(Axiom::ClosurePreservation, vec![a]),
        }
    }
    Ok(report)
}

/// For every `a` with `K_S a ∈ Z`: `K_T f(a)` exists and equals `f(K_S a)`.
/// Witnesses are the offending `a`.
pub fn check_closure_preservation(
    s: &SpecSemilattice,
    z: &ClosureSet,
    t: &SpecSemilattice,
    f: &Homomorphism,
) -> Result<AxiomReport> {
    closure_preservation_report(s, z.members(), t, f.table())
}

/// The unique K-homomorphism out of a `Z`-extension factoring `eta`, for
/// `eta` preserving the closures in `Z`.
pub fn lift_hom_z(
    ext: &Extension,
    t: &SpecSemilattice,
    eta: &Homomorphism,
    z: &ClosureSet,
) -> Result<Homomorphism> {
    if ext.z() != z.members() {
        return Err(Error::malformed(
            "closure set differs from the one the extension was built over",
        ));
    }
    let report = check_closure_preservation(ext.source(), z, t, eta)?;
    if let Some(v) = report.violations.first() {
        return Err(Error::ClosureNotPreserved(format!(
            "at {}",
            ext.source().label(v.witness[0])
        )));
    }
    lift_hom(ext, t, eta)
}

/// Cross-check for [`lift_hom_z`]: lift `eta` to the plain extension, lift
/// `υ^Z` likewise, and push the first lift through the quotient the second
/// one induces. Fails if it does not pass to the quotient.
pub fn lift_hom_z_via_plain(
    plain: &Extension,
    zext: &Extension,
    t: &SpecSemilattice,
    eta: &Homomorphism,
) -> Result<Homomorphism> {
    if !plain.z().is_empty() {
        return Err(Error::malformed("first extension must be the plain one"));
    }
    let lifted = lift_hom(plain, t, eta)?;
    let to_z = lift_hom(
        plain,
        zext.result(),
        &Homomorphism::unchecked(zext.upsilon().to_vec(), HomKind::Spec),
    )?;
    let mut table = vec![None; zext.class_count()];
    for c in 0..plain.class_count() {
        let d = to_z.apply(c);
        match table[d] {
            None => table[d] = Some(lifted.apply(c)),
            Some(v) if v == lifted.apply(c) => {}
            Some(_) => {
                return Err(Error::Internal(format!(
                    "lift does not pass to the quotient at {}",
                    zext.class_label(d)
                )))
            }
        }
    }
    let table = table
        .into_iter()
        .enumerate()
        .map(|(d, v)| {
            v.ok_or_else(|| Error::Internal(format!("{} not reached", zext.class_label(d))))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Homomorphism::unchecked(table, HomKind::KHom))
}

/// Relation matrix helper shared with the verifier.
pub fn pair_space(s: &SpecSemilattice, z: &ClosureSet) -> Result<PairSpace> {
    PairSpace::new(s, z.members())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::free_extension::build_free_extension;
    use crate::semilattice::JoinSemilattice;

    fn chain2() -> SpecSemilattice {
        SpecSemilattice::discrete(JoinSemilattice::chain(2))
    }

    fn p(a: Element, b: &[Element]) -> Pair {
        Pair::new(a, b.iter().copied())
    }

    #[test]
    fn closure_set_rejects_non_closures() {
        let s =
            crate::specialization::complete_specialization(&JoinSemilattice::chain(2), &[(1, 0)])
                .unwrap();
        assert!(matches!(
            ClosureSet::new(&s, [0]),
            Err(Error::NotClosure(0, 1))
        ));
        assert_eq!(ClosureSet::all_closures(&s).unwrap().members(), &[1]);
    }

    #[test]
    fn z_closure_collapses_its_own_new_closure() {
        let s = chain2();
        let z = ClosureSet::new(&s, [1]).unwrap();
        assert!(preceq_z(&s, &z, &p(1, &[1]), &p(1, &[])).unwrap());
        assert!(!crate::free_extension::preceq(&s, &p(1, &[1]), &p(1, &[])).unwrap());
    }

    #[test]
    fn empty_z_matches_plain_relation() {
        let s = chain2();
        let space = PairSpace::new(&s, &[]).unwrap();
        let z = ClosureSet::empty();
        for x in space.pairs() {
            for y in space.pairs() {
                assert_eq!(
                    preceq_z(&s, &z, &x, &y).unwrap(),
                    crate::free_extension::preceq(&s, &x, &y).unwrap()
                );
            }
        }
    }

    #[test]
    fn upper_closure_only_leaves_three_classes() {
        let s = chain2();
        let e = build_z_extension(&s, &ClosureSet::new(&s, [1]).unwrap()).unwrap();
        assert_eq!(e.class_count(), 3);
        let k0 = e.closure(e.embed(0).unwrap());
        assert_ne!(k0, e.embed(0).unwrap());
        assert_eq!(e.closure(e.embed(1).unwrap()), e.embed(1).unwrap());
    }

    #[test]
    fn plain_upsilon_fails_preservation() {
        let s = chain2();
        let e = build_free_extension(&s).unwrap();
        let z = ClosureSet::all_closures(&s).unwrap();
        let report = check_closure_preservation(&s, &z, e.result(), &e.upsilon_hom()).unwrap();
        assert_eq!(report.violations[0].witness, vec![0]);
        let report =
            check_closure_preservation(&s, &ClosureSet::empty(), e.result(), &e.upsilon_hom())
                .unwrap();
        assert!(report.ok());
    }

    #[test]
    fn lift_z_rejects_non_preserving_map() {
        let s = chain2();
        let z = ClosureSet::all_closures(&s).unwrap();
        let e = build_z_extension(&s, &z).unwrap();
        let plain = build_free_extension(&s).unwrap();
        let err = lift_hom_z(&e, plain.result(), &plain.upsilon_hom(), &z).unwrap_err();
        assert!(matches!(err, Error::ClosureNotPreserved(_)));
    }
}
