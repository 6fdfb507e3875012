use std::sync::Arc;

use indexmap::IndexMap;
use serde::Serialize;

use super::{
    diagonal_ideal_identity, is_left_invariant, johnson_check, mean_from_diagonal, schikhof_from,
    virtual_diagonal_construct, JohnsonCertificate, SchikhofVerdict, VirtualDiagonal,
};
use crate::algebra::{i0_identity, Functional};
use crate::catalog::GroupSpec;
use crate::exec::{self, Execution};
use crate::field::{AbsValue, FieldDescriptor, Prime};
use crate::group::{FiniteGroup, GroupError};
use crate::hopf::TensorElement;
use crate::Error;

#[derive(Debug, Clone, Serialize)]
pub struct GroupBlock {
    pub name: String,
    pub order: usize,
    pub labels: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DiagonalBlock {
    pub tensor: VirtualDiagonal,
    /// `1⊗1 - d`, a right identity of `ker π_0`.
    pub ideal_right_identity: TensorElement,
    pub ideal_solution_nullity: usize,
    pub i0_identity_norm_exponent: AbsValue,
}

/// Everything `check` establishes for one `(G, p)`.
#[derive(Debug, Clone, Serialize)]
pub struct Certificate {
    pub group: GroupBlock,
    pub prime: u64,
    pub johnson: JohnsonCertificate,
    pub schikhof: SchikhofVerdict,
    pub diagonal: DiagonalBlock,
    pub checks: IndexMap<String, &'static str>,
}

impl Certificate {
    pub fn all_passed(&self) -> bool {
        self.checks.values().all(|v| *v == "pass")
    }

    pub fn failed_checks(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|(_, v)| **v != "pass")
            .map(|(k, _)| k.as_str())
            .collect()
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "fail"
    }
}

/// Runs the Johnson and Schikhof checks, builds and verifies the virtual
/// diagonal, the mean round trip, and the `I_0` and `I^Δ` identities.
///
/// Failures of internal verification steps surface as
/// [`Error::Invariant`]; the returned checks record every identity that
/// was re-verified on the final objects.
pub fn certify(
    group: &Arc<FiniteGroup>,
    field: &FieldDescriptor,
    cap: usize,
) -> Result<Certificate, Error> {
    if group.order() > cap {
        return Err(GroupError::OrderAboveCap {
            order: group.order(),
            cap,
        }
        .into());
    }
    let p = field.prime();
    let johnson = johnson_check(group, field)?;
    let schikhof = schikhof_from(group, field, &johnson, cap)?;
    let diagonal = virtual_diagonal_construct(group, &johnson, cap)?;
    let round_trip = mean_from_diagonal(&diagonal)?;
    let ideal = diagonal_ideal_identity(&diagonal)?;
    let i0 = i0_identity(group, p)?;

    let mean = johnson
        .mean
        .clone()
        .unwrap_or_else(|| Functional::zero(group));
    let order_valuation = p.valuation_of_u64(group.order() as u64) as i64;
    let p_divides = p.divides(group.order() as u64);
    let expected_i0_norm = if group.order() == 1 {
        AbsValue::Zero
    } else {
        AbsValue::Pow(order_valuation)
    };

    let mut checks = IndexMap::new();
    let mut record = |name: &str, ok: bool| {
        checks.insert(name.to_string(), verdict(ok));
    };
    record("invariant_space_dim_one", johnson.invariant_space_dim == 1);
    record("johnson_amenable", johnson.amenable);
    record("mean_left_invariant", is_left_invariant(&mean));
    record(
        "mean_normalized",
        mean.pair(&Functional::ones(group))
            .is_ok_and(|s| s.is_one()),
    );
    record(
        "mean_equals_averaging",
        mean == Functional::averaging(group),
    );
    record(
        "mean_norm_exponent_equals_valuation",
        johnson.mean_norm_exponent == Some(AbsValue::Pow(order_valuation)),
    );
    record(
        "schikhof_methods_agree",
        schikhof.method_norm.passed == schikhof.method_lattice.passed,
    );
    record(
        "schikhof_iff_p_not_dividing_order",
        schikhof.amenable == !p_divides,
    );
    record(
        "diagonal_commutation",
        diagonal.commutation_failures().is_empty(),
    );
    record("diagonal_unit", diagonal.unit_failures().is_empty());
    record(
        "diagonal_closed_form",
        *diagonal.tensor() == VirtualDiagonal::closed_form(group),
    );
    record("mean_diagonal_round_trip", round_trip == mean);
    record("i0_identity", i0.basis_checked + 1 == group.order());
    record("i0_norm_exponent", i0.norm == expected_i0_norm);
    record(
        "ideal_right_identity",
        ideal.nullity > 0 || ideal.matches_closed_form,
    );

    Ok(Certificate {
        group: GroupBlock {
            name: group.name().to_string(),
            order: group.order(),
            labels: group.labels().to_vec(),
        },
        prime: p.get(),
        johnson,
        schikhof,
        diagonal: DiagonalBlock {
            tensor: diagonal,
            ideal_right_identity: ideal.closed_form,
            ideal_solution_nullity: ideal.nullity,
            i0_identity_norm_exponent: i0.norm,
        },
        checks,
    })
}

/// One line of the Johnson/Schikhof comparison table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub group: String,
    pub order: usize,
    pub prime: u64,
    pub johnson: bool,
    pub schikhof: bool,
    pub mean_norm_exponent: i64,
    pub p_divides_order: bool,
}

fn sweep_row(group: &Arc<FiniteGroup>, p: Prime, cap: usize) -> Result<SweepRow, Error> {
    let field = FieldDescriptor::q_p(p);
    let johnson = johnson_check(group, &field)?;
    let schikhof = schikhof_from(group, &field, &johnson, cap)?;
    let row = SweepRow {
        group: group.name().to_string(),
        order: group.order(),
        prime: p.get(),
        johnson: johnson.amenable,
        schikhof: schikhof.amenable,
        mean_norm_exponent: johnson
            .mean_norm_exponent
            .and_then(AbsValue::exponent)
            .ok_or_else(|| Error::Invariant(format!("no mean norm for {}", group.name())))?,
        p_divides_order: p.divides(group.order() as u64),
    };
    if !row.johnson || row.schikhof == row.p_divides_order {
        return Err(Error::Invariant(format!(
            "sweep row for {} at p = {} contradicts the finite-group criterion",
            row.group, row.prime
        )));
    }
    Ok(row)
}

/// Johnson and Schikhof verdicts for every catalog group of order
/// `<= max_order` and every prime, ordered by catalog position then prime.
pub fn sweep(
    max_order: usize,
    primes: &[Prime],
    cap: usize,
    exec: Execution,
) -> Result<Vec<SweepRow>, Error> {
    if max_order > cap {
        return Err(GroupError::OrderAboveCap {
            order: max_order,
            cap,
        }
        .into());
    }
    let groups = crate::catalog::catalog(max_order)
        .iter()
        .map(|spec: &GroupSpec| Ok(Arc::new(spec.build()?)))
        .collect::<Result<Vec<_>, Error>>()?;
    let jobs: Vec<(Arc<FiniteGroup>, Prime)> = groups
        .iter()
        .flat_map(|g| primes.iter().map(move |p| (g.clone(), *p)))
        .collect();
    exec::map(exec, &jobs, |(g, p)| sweep_row(g, *p, cap))
        .into_iter()
        .collect()
}
