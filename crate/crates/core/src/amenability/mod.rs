//! Invariant means, Johnson and Schikhof `K`-amenability, virtual
//! diagonals and derivations for `l(G)`.

mod certificate;
mod derivation;
mod diagonal;

use std::sync::Arc;

use serde::Serialize;

use crate::algebra::Functional;
use crate::field::{AbsValue, FieldDescriptor, Scalar};
use crate::group::{subgroup_index, FiniteGroup};
use crate::linalg::SparseSystem;
use crate::Error;

pub use certificate::{certify, sweep, Certificate, SweepRow};
pub use derivation::{derivation_spaces, Bimodule, DerivationReport};
pub use diagonal::{
    diagonal_ideal_identity, mean_from_diagonal, virtual_diagonal_construct, DiagonalIdealIdentity,
    VirtualDiagonal,
};

/// Basis of the left-invariant functionals on `l^∞(G)`, i.e. of the
/// solutions of `m(g·φ) = m(φ)` for all `g` and all basis functions `φ`.
///
/// On the basis `φ = δ_x` the constraint reads `m_{gx} - m_x = 0`.
pub fn invariant_functional_space(group: &Arc<FiniteGroup>) -> Vec<Functional> {
    let n = group.order();
    let mut sys = SparseSystem::new(n);
    for g in group.elements() {
        for x in group.elements() {
            let gx = group.mul(g, x);
            if gx != x {
                sys.push_homogeneous(vec![(gx, Scalar::one()), (x, -Scalar::one())])
                    .expect("columns in range");
            }
        }
    }
    sys.kernel_basis()
        .into_iter()
        .map(|v| Functional::from_values(group, v).expect("length n"))
        .collect()
}

/// `m(g·δ_x) = m(δ_x)` for every `g` and `x`.
pub fn is_left_invariant(m: &Functional) -> bool {
    let g = m.group();
    g.elements().all(|a| {
        g.elements().all(|x| {
            let phi = Functional::indicator(g, x);
            let moved = phi.left_translate(a).expect("element in range");
            m.pair(&moved).ok() == m.pair(&phi).ok()
        })
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct JohnsonCertificate {
    pub amenable: bool,
    pub invariant_space_dim: usize,
    /// The invariant mean normalized to `m(𝟙) = 1`.
    pub mean: Option<Functional>,
    pub mean_norm_exponent: Option<AbsValue>,
    /// Invariant functional with `m(𝟙) = 0`, reported when no mean exists.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub evidence: Option<Functional>,
}

/// Searches the invariant functionals for one with `m(𝟙) != 0` and
/// normalizes it. For finite groups the result must coincide with the
/// averaging functional; a mismatch is reported as an invariant failure.
pub fn johnson_check(
    group: &Arc<FiniteGroup>,
    field: &FieldDescriptor,
) -> Result<JohnsonCertificate, Error> {
    let basis = invariant_functional_space(group);
    let ones = Functional::ones(group);
    let found = basis
        .iter()
        .map(|b| (b, b.pair(&ones).expect("same group")))
        .find(|(_, total)| !total.is_zero());
    let Some((b, total)) = found else {
        return Ok(JohnsonCertificate {
            amenable: false,
            invariant_space_dim: basis.len(),
            mean: None,
            mean_norm_exponent: None,
            evidence: basis.first().cloned(),
        });
    };
    let mean = b.scale(&total.inv()?);
    if !is_left_invariant(&mean) {
        return Err(Error::Invariant(format!(
            "mean over {} is not left invariant",
            group.name()
        )));
    }
    if !mean.pair(&ones)?.is_one() {
        return Err(Error::Invariant("normalized mean has m(𝟙) != 1".into()));
    }
    if mean != Functional::averaging(group) {
        return Err(Error::Invariant(format!(
            "kernel-derived mean over {} differs from the averaging functional",
            group.name()
        )));
    }
    Ok(JohnsonCertificate {
        amenable: true,
        invariant_space_dim: basis.len(),
        mean_norm_exponent: Some(mean.norm(field.prime())),
        mean: Some(mean),
        evidence: None,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NormMethod {
    pub mean_norm_exponent: Option<AbsValue>,
    /// `‖m‖ <= 1`
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LatticeWitness {
    pub s1: Vec<String>,
    pub s2: Vec<String>,
    pub index: usize,
    pub divisible_by_p: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LatticeMethod {
    pub passed: bool,
    pub subgroups: usize,
    pub pairs_checked: usize,
    pub failing_pairs: usize,
    /// First failing pair, scanning larger `S_2` first, then smaller `S_1`.
    pub witness: Option<LatticeWitness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SchikhofVerdict {
    pub amenable: bool,
    /// Every finite set lies in a compact subgroup: always true for finite `G`.
    pub condition_1: bool,
    pub method_norm: NormMethod,
    pub method_lattice: LatticeMethod,
}

/// Schikhof amenability from a Johnson certificate (norm of the unique
/// normalized mean) and, independently, from the subgroup lattice
/// (`p` divides no index `[S_2 : S_1]`). The two verdicts must agree.
pub fn schikhof_from(
    group: &Arc<FiniteGroup>,
    field: &FieldDescriptor,
    johnson: &JohnsonCertificate,
    cap: usize,
) -> Result<SchikhofVerdict, Error> {
    let method_norm = NormMethod {
        mean_norm_exponent: johnson.mean_norm_exponent,
        passed: johnson.invariant_space_dim == 1
            && johnson
                .mean_norm_exponent
                .is_some_and(AbsValue::at_most_one),
    };

    let subgroups = group.enumerate_subgroups(cap)?;
    let residue = field.residue_characteristic() as usize;
    let mut pairs_checked = 0;
    let mut failing_pairs = 0;
    let mut witness = None;
    for sup in subgroups.iter().rev() {
        for sub in subgroups.iter().filter(|s| s.is_subset_of(sup)) {
            let index = subgroup_index(group, sub, sup)?;
            pairs_checked += 1;
            if index % residue == 0 {
                failing_pairs += 1;
                witness.get_or_insert_with(|| LatticeWitness {
                    s1: sub.labels(group).into_iter().map(String::from).collect(),
                    s2: sup.labels(group).into_iter().map(String::from).collect(),
                    index,
                    divisible_by_p: true,
                });
            }
        }
    }
    let method_lattice = LatticeMethod {
        passed: failing_pairs == 0,
        subgroups: subgroups.len(),
        pairs_checked,
        failing_pairs,
        witness,
    };
    if method_norm.passed != method_lattice.passed {
        return Err(Error::Invariant(format!(
            "Schikhof methods disagree over {} at p = {}: norm says {}, lattice says {}",
            group.name(),
            field.prime(),
            method_norm.passed,
            method_lattice.passed
        )));
    }
    Ok(SchikhofVerdict {
        amenable: method_norm.passed,
        condition_1: true,
        method_norm,
        method_lattice,
    })
}

pub fn schikhof_check(
    group: &Arc<FiniteGroup>,
    field: &FieldDescriptor,
    cap: usize,
) -> Result<SchikhofVerdict, Error> {
    let johnson = johnson_check(group, field)?;
    schikhof_from(group, field, &johnson, cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_ORDER_CAP;

    fn grp(g: FiniteGroup) -> Arc<FiniteGroup> {
        Arc::new(g)
    }

    fn k(p: u64) -> FieldDescriptor {
        FieldDescriptor::new(p).unwrap()
    }

    #[test]
    fn invariant_space_is_a_line() {
        let trivial = grp(FiniteGroup::cyclic(1).unwrap());
        assert_eq!(invariant_functional_space(&trivial).len(), 1);
        let c4 = grp(FiniteGroup::cyclic(4).unwrap());
        let basis = invariant_functional_space(&c4);
        assert_eq!(basis.len(), 1);
        let first = basis[0].value(0).clone();
        assert!(!first.is_zero());
        assert!(basis[0].values().iter().all(|v| *v == first));
        assert_eq!(
            invariant_functional_space(&grp(FiniteGroup::symmetric(3).unwrap())).len(),
            1
        );
    }

    #[test]
    fn johnson_on_small_groups() {
        for p in [2, 3, 5, 7] {
            let cp = grp(FiniteGroup::cyclic(p as usize).unwrap());
            let cert = johnson_check(&cp, &k(p)).unwrap();
            assert!(cert.amenable);
            assert_eq!(cert.mean_norm_exponent, Some(AbsValue::Pow(1)));
        }
        let trivial = grp(FiniteGroup::cyclic(1).unwrap());
        let cert = johnson_check(&trivial, &k(2)).unwrap();
        assert_eq!(cert.mean.unwrap(), Functional::indicator(&trivial, 0));
        assert_eq!(cert.mean_norm_exponent, Some(AbsValue::Pow(0)));
        let c6 = grp(FiniteGroup::cyclic(6).unwrap());
        assert_eq!(
            johnson_check(&c6, &k(5)).unwrap().mean_norm_exponent,
            Some(AbsValue::Pow(0))
        );
    }

    #[test]
    fn schikhof_examples() {
        for p in [2, 3, 5, 7] {
            let cp = grp(FiniteGroup::cyclic(p as usize).unwrap());
            let v = schikhof_check(&cp, &k(p), DEFAULT_ORDER_CAP).unwrap();
            assert!(!v.amenable);
            let w = v.method_lattice.witness.unwrap();
            assert_eq!(w.s1, vec!["0"]);
            assert_eq!(w.s2.len(), p as usize);
            assert_eq!(w.index, p as usize);
        }
        let c5 = grp(FiniteGroup::cyclic(5).unwrap());
        let v = schikhof_check(&c5, &k(7), DEFAULT_ORDER_CAP).unwrap();
        assert!(v.amenable && v.method_lattice.witness.is_none());
        assert_eq!(v.method_lattice.pairs_checked, 3);
        let s3 = grp(FiniteGroup::symmetric(3).unwrap());
        let v = schikhof_check(&s3, &k(2), DEFAULT_ORDER_CAP).unwrap();
        assert!(!v.amenable);
        assert_eq!(v.method_lattice.witness.as_ref().unwrap().index, 6);
        assert!(v.method_lattice.failing_pairs > 1);
    }

    #[test]
    fn schikhof_respects_cap() {
        let s4 = grp(FiniteGroup::symmetric(4).unwrap());
        assert!(matches!(
            schikhof_check(&s4, &k(5), 12),
            Err(Error::Group(crate::group::GroupError::OrderAboveCap { .. }))
        ));
    }
}
