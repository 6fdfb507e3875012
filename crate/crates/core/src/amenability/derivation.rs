use std::sync::Arc;

use serde::Serialize;

use crate::field::Scalar;
use crate::group::FiniteGroup;
use crate::linalg::{independent_subset, ExactMatrix, SpanSolver, SparseSystem};
use crate::Error;

/// A finite-dimensional `l(G)`-bimodule given by the actions of the point
/// masses: `δ_g·x = left[g] x` and `x·δ_g = right[g] x`.
#[derive(Debug, Clone)]
pub struct Bimodule {
    name: String,
    dim: usize,
    left: Vec<ExactMatrix>,
    right: Vec<ExactMatrix>,
}

fn permutation(dim: usize, image: impl Fn(usize) -> usize) -> ExactMatrix {
    let mut m = ExactMatrix::zeros(dim, dim);
    for j in 0..dim {
        m.set(image(j), j, Scalar::one());
    }
    m
}

impl Bimodule {
    /// Checks that `left` is a unital representation, `right` a unital
    /// antirepresentation, and that the two actions commute.
    pub fn new(
        group: &Arc<FiniteGroup>,
        name: impl Into<String>,
        dim: usize,
        left: Vec<ExactMatrix>,
        right: Vec<ExactMatrix>,
    ) -> Result<Self, Error> {
        let name = name.into();
        let n = group.order();
        let bad = |what: &str| Error::Invariant(format!("bimodule {name}: {what}"));
        if left.len() != n || right.len() != n {
            return Err(bad("need one matrix per group element on each side"));
        }
        if left
            .iter()
            .chain(&right)
            .any(|m| m.rows() != dim || m.cols() != dim)
        {
            return Err(bad("action matrix has the wrong shape"));
        }
        let id = ExactMatrix::identity(dim);
        let e = group.identity();
        if left[e] != id || right[e] != id {
            return Err(bad("δ_e does not act as the identity"));
        }
        for g in group.elements() {
            for h in group.elements() {
                let gh = group.mul(g, h);
                if left[g].mul(&left[h])? != left[gh] {
                    return Err(bad("left action is not a representation"));
                }
                // x·g·h = right[h] right[g] x
                if right[h].mul(&right[g])? != right[gh] {
                    return Err(bad("right action is not an antirepresentation"));
                }
                if left[g].mul(&right[h])? != right[h].mul(&left[g])? {
                    return Err(bad("left and right actions do not commute"));
                }
            }
        }
        Ok(Bimodule {
            name,
            dim,
            left,
            right,
        })
    }

    /// `X = A` with convolution on both sides.
    pub fn regular(group: &Arc<FiniteGroup>) -> Result<Self, Error> {
        let n = group.order();
        let left = group
            .elements()
            .map(|g| permutation(n, |x| group.mul(g, x)))
            .collect();
        let right = group
            .elements()
            .map(|g| permutation(n, |x| group.mul(x, g)))
            .collect();
        Self::new(group, "regular", n, left, right)
    }

    /// `X = K` with both actions through the augmentation.
    pub fn trivial(group: &Arc<FiniteGroup>) -> Result<Self, Error> {
        let one = || ExactMatrix::identity(1);
        let n = group.order();
        Self::new(
            group,
            "trivial",
            1,
            (0..n).map(|_| one()).collect(),
            (0..n).map(|_| one()).collect(),
        )
    }

    /// `X = A ⊗ A`, left action on the left leg, right action on the right leg.
    pub fn outer_tensor(group: &Arc<FiniteGroup>) -> Result<Self, Error> {
        let n = group.order();
        let left = group
            .elements()
            .map(|g| permutation(n * n, |i| group.mul(g, i / n) * n + i % n))
            .collect();
        let right = group
            .elements()
            .map(|g| permutation(n * n, |i| (i / n) * n + group.mul(i % n, g)))
            .collect();
        Self::new(group, "outer_tensor", n * n, left, right)
    }

    pub fn stock(group: &Arc<FiniteGroup>) -> Result<Vec<Self>, Error> {
        Ok(vec![
            Self::regular(group)?,
            Self::trivial(group)?,
            Self::outer_tensor(group)?,
        ])
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DerivationReport {
    pub bimodule: String,
    pub module_dim: usize,
    pub derivation_dim: usize,
    pub inner_dim: usize,
    pub derivations_are_inner: bool,
    pub inner_are_derivations: bool,
    /// `D` as the stacked vector `(D(δ_g))_g`.
    #[serde(skip)]
    pub derivation_basis: Vec<Vec<Scalar>>,
    #[serde(skip)]
    pub inner_basis: Vec<Vec<Scalar>>,
}

impl DerivationReport {
    pub fn all_inner(&self) -> bool {
        self.derivations_are_inner && self.inner_are_derivations
    }
}

/// Nonzero entries of column `i` of `m`, i.e. row `i` of `mᵀ`.
fn transpose_rows(m: &ExactMatrix) -> Vec<Vec<(usize, Scalar)>> {
    let mut rows = vec![Vec::new(); m.cols()];
    for j in 0..m.rows() {
        for (i, x) in m.row(j).iter().enumerate() {
            if !x.is_zero() {
                rows[i].push((j, x.clone()));
            }
        }
    }
    rows
}

/// Derivations `D: A → X*` and inner derivations, compared both ways.
///
/// On `X*` the actions are `a·ξ = right(a)ᵀ ξ` and `ξ·a = left(a)ᵀ ξ`, so
/// the derivation law on point masses reads
/// `D(gh) = right(g)ᵀ D(h) + left(h)ᵀ D(g)` and an inner derivation is
/// `D_ξ(b) = b·ξ - ξ·b`.
pub fn derivation_spaces(
    group: &Arc<FiniteGroup>,
    x: &Bimodule,
) -> Result<DerivationReport, Error> {
    let n = group.order();
    let m = x.dim;
    if x.left.len() != n {
        return Err(Error::Invariant(format!(
            "bimodule {} belongs to another group",
            x.name
        )));
    }
    let unknowns = n * m;
    let at = |g: usize, i: usize| g * m + i;
    let rt: Vec<_> = x.right.iter().map(transpose_rows).collect();
    let lt: Vec<_> = x.left.iter().map(transpose_rows).collect();

    let mut sys = SparseSystem::new(unknowns);
    for g in group.elements() {
        for h in group.elements() {
            let gh = group.mul(g, h);
            for i in 0..m {
                let mut row = vec![(at(gh, i), Scalar::one())];
                row.extend(rt[g][i].iter().map(|(j, c)| (at(h, *j), -c.clone())));
                row.extend(lt[h][i].iter().map(|(j, c)| (at(g, *j), -c.clone())));
                sys.push_homogeneous(row)?;
            }
        }
    }
    let derivation_basis = sys.kernel_basis();

    let generators: Vec<Vec<Scalar>> = (0..m)
        .map(|k| {
            let mut v = vec![Scalar::zero(); unknowns];
            for b in group.elements() {
                for i in 0..m {
                    v[at(b, i)] = x.right[b].get(k, i) - x.left[b].get(k, i);
                }
            }
            v
        })
        .collect();
    let inner_basis: Vec<Vec<Scalar>> = independent_subset(unknowns, &generators)?
        .into_iter()
        .map(|j| generators[j].clone())
        .collect();

    let inner_span = SpanSolver::new(unknowns, &inner_basis)?;
    let mut derivations_are_inner = true;
    for d in &derivation_basis {
        derivations_are_inner &= inner_span.contains(d)?;
    }
    let derivation_span = SpanSolver::new(unknowns, &derivation_basis)?;
    let mut inner_are_derivations = true;
    for v in &inner_basis {
        inner_are_derivations &= derivation_span.contains(v)? && sys.is_satisfied_by(v);
    }

    Ok(DerivationReport {
        bimodule: x.name.clone(),
        module_dim: m,
        derivation_dim: derivation_basis.len(),
        inner_dim: inner_basis.len(),
        derivations_are_inner,
        inner_are_derivations,
        derivation_basis,
        inner_basis,
    })
}
