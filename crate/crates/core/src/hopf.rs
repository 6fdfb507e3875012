//! Hopf structure of `l(G)`, the enveloping algebra `A^e = A ⊗ A^op` and
//! the map `E = (1 ⊗ S)Δ : A → A^e`.
//!
//! Everything is finite dimensional, so `A^{**}`, `(A^e)^{**}` and `E^{**}`
//! are identified with `A`, `A^e` and `E`. The checks in [`eq1_check`]
//! exercise the identification through explicit pairings with basis
//! functionals.

use std::sync::Arc;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::algebra::{same_group, AlgebraError, Element};
use crate::exec::{self, Execution};
use crate::field::{Prime, Scalar};
use crate::group::FiniteGroup;
use crate::linalg::{self, ExactMatrix, LinalgError, QuotientSpace, Solution};

/// Which multiplication the second tensor leg uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TensorFlavor {
    /// `A ⊗ A`: `(a⊗b)(c⊗d) = ac ⊗ bd`
    Plain,
    /// `A ⊗ A^op`: `(a⊗b)(c⊗d) = ac ⊗ db`
    Enveloping,
}

/// An element of `A ⊗ A`, coefficient of `δ_g ⊗ δ_h` at `(g, h)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorElement {
    group: Arc<FiniteGroup>,
    flavor: TensorFlavor,
    coeffs: Vec<Scalar>,
}

impl TensorElement {
    pub fn zero(group: &Arc<FiniteGroup>, flavor: TensorFlavor) -> Self {
        let n = group.order();
        TensorElement {
            group: group.clone(),
            flavor,
            coeffs: vec![Scalar::zero(); n * n],
        }
    }

    /// `δ_g ⊗ δ_h`
    pub fn basis(group: &Arc<FiniteGroup>, flavor: TensorFlavor, g: usize, h: usize) -> Self {
        let mut t = Self::zero(group, flavor);
        t.coeffs[g * group.order() + h] = Scalar::one();
        t
    }

    /// `δ_e ⊗ δ_e`
    pub fn unit(group: &Arc<FiniteGroup>, flavor: TensorFlavor) -> Self {
        Self::basis(group, flavor, group.identity(), group.identity())
    }

    /// `a ⊗ b`
    pub fn simple(a: &Element, b: &Element, flavor: TensorFlavor) -> Result<Self, AlgebraError> {
        same_group(a.group(), b.group())?;
        let group = a.group();
        let mut t = Self::zero(group, flavor);
        for (g, x) in a.coeffs().iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (h, y) in b.coeffs().iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                t.coeffs[g * group.order() + h] = x * y;
            }
        }
        Ok(t)
    }

    pub fn from_coeffs(
        group: &Arc<FiniteGroup>,
        flavor: TensorFlavor,
        coeffs: Vec<Scalar>,
    ) -> Result<Self, AlgebraError> {
        let n = group.order();
        if coeffs.len() != n * n {
            return Err(AlgebraError::Length {
                expected: n * n,
                found: coeffs.len(),
            });
        }
        Ok(TensorElement {
            group: group.clone(),
            flavor,
            coeffs,
        })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn flavor(&self) -> TensorFlavor {
        self.flavor
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, g: usize, h: usize) -> &Scalar {
        &self.coeffs[g * self.group.order() + h]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    fn nonzero(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        let n = self.group.order();
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(move |(i, x)| (i / n, i % n, x))
    }

    fn check_compatible(&self, other: &TensorElement) -> Result<(), AlgebraError> {
        same_group(&self.group, &other.group)?;
        if self.flavor != other.flavor {
            return Err(AlgebraError::Check(format!(
                "cannot combine {:?} and {:?} tensors",
                self.flavor, other.flavor
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &TensorElement) -> Result<TensorElement, AlgebraError> {
        self.check_compatible(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(TensorElement {
            coeffs,
            ..self.clone()
        })
    }

    pub fn sub(&self, other: &TensorElement) -> Result<TensorElement, AlgebraError> {
        self.check_compatible(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(TensorElement {
            coeffs,
            ..self.clone()
        })
    }

    pub fn scale(&self, c: &Scalar) -> TensorElement {
        TensorElement {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
            ..self.clone()
        }
    }

    /// Product in `A ⊗ A` or `A ⊗ A^op` according to the flavor.
    pub fn mul(&self, other: &TensorElement) -> Result<TensorElement, AlgebraError> {
        self.check_compatible(other)?;
        let g = &self.group;
        let n = g.order();
        let mut out = vec![Scalar::zero(); n * n];
        for (a, b, x) in self.nonzero() {
            for (c, d, y) in other.nonzero() {
                let second = match self.flavor {
                    TensorFlavor::Plain => g.mul(b, d),
                    TensorFlavor::Enveloping => g.mul(d, b),
                };
                out[g.mul(a, c) * n + second] += x * y;
            }
        }
        Ok(TensorElement {
            group: g.clone(),
            flavor: self.flavor,
            coeffs: out,
        })
    }

    /// Same coefficients, other multiplication.
    pub fn with_flavor(&self, flavor: TensorFlavor) -> TensorElement {
        TensorElement {
            flavor,
            ..self.clone()
        }
    }
}

impl Serialize for TensorElement {
    /// Nonzero entries as `[left label, right label, "num/den"]`.
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let entries: Vec<_> = self.nonzero().collect();
        let mut seq = s.serialize_seq(Some(entries.len()))?;
        for (g, h, x) in entries {
            seq.serialize_element(&(self.group.label(g), self.group.label(h), x))?;
        }
        seq.end()
    }
}

/// `Δ(f) = Σ α_g δ_g ⊗ δ_g`
pub fn comultiply(f: &Element) -> TensorElement {
    let group = f.group();
    let mut t = TensorElement::zero(group, TensorFlavor::Plain);
    for (g, x) in f.coeffs().iter().enumerate() {
        t.coeffs[g * group.order() + g] = x.clone();
    }
    t
}

/// `(Sf)(g) = f(g^{-1})`
pub fn antipode(f: &Element) -> Element {
    f.reflect()
}

/// `E(δ_g) = δ_g ⊗ δ_{g^{-1}}`, extended linearly.
pub fn e_map(f: &Element) -> TensorElement {
    let group = f.group();
    let mut t = TensorElement::zero(group, TensorFlavor::Enveloping);
    for (g, x) in f.coeffs().iter().enumerate() {
        t.coeffs[g * group.order() + group.inverse(g)] = x.clone();
    }
    t
}

/// Multiplication map `a ⊗ b ↦ ab`.
pub fn pi0(t: &TensorElement) -> Element {
    let group = t.group();
    let mut out = vec![Scalar::zero(); group.order()];
    for (g, h, x) in t.nonzero() {
        out[group.mul(g, h)] += x;
    }
    Element::from_coeffs(group, out).expect("length matches")
}

/// The left `A^e`-module structure on `A`: `(a ⊗ b)·c = a c b`.
pub fn enveloping_act(u: &TensorElement, c: &Element) -> Result<Element, AlgebraError> {
    same_group(u.group(), c.group())?;
    let group = u.group();
    let mut out = vec![Scalar::zero(); group.order()];
    for (a, b, x) in u.nonzero() {
        for (k, y) in c.coeffs().iter().enumerate().filter(|(_, y)| !y.is_zero()) {
            out[group.mul(group.mul(a, k), b)] += x * y;
        }
    }
    Element::from_coeffs(group, out)
}

/// Matrix of `E : A → A^e` in the δ bases (`n² x n`).
pub fn e_matrix(group: &Arc<FiniteGroup>) -> ExactMatrix {
    let n = group.order();
    let mut m = ExactMatrix::zeros(n * n, n);
    for g in group.elements() {
        m.set(g * n + group.inverse(g), g, Scalar::one());
    }
    m
}

/// One named identity checked over a set of basis inputs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub name: String,
    pub checked: usize,
    pub passed: bool,
    /// Basis inputs (by label) on which the identity failed.
    pub failures: Vec<String>,
}

impl AxiomCheck {
    fn run(name: &str, inputs: impl IntoIterator<Item = (String, bool)>) -> Self {
        let mut checked = 0;
        let mut failures = Vec::new();
        for (label, ok) in inputs {
            checked += 1;
            if !ok {
                failures.push(label);
            }
        }
        AxiomCheck {
            name: name.to_string(),
            checked,
            passed: failures.is_empty(),
            failures,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub group: String,
    pub prime: u64,
    pub checks: Vec<AxiomCheck>,
}

impl CheckReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Comultiplication, counit and antipode of `l(G)` as explicit matrices
/// in the δ bases: `Δ` is `n² x n`, `ε` is a row of length `n`, `S` is
/// `n x n`. Multiplication always comes from the group table.
#[derive(Debug, Clone)]
pub struct HopfStructure {
    group: Arc<FiniteGroup>,
    comultiplication: ExactMatrix,
    counit: Vec<Scalar>,
    antipode: ExactMatrix,
}

impl HopfStructure {
    pub fn of_group(group: &Arc<FiniteGroup>) -> Self {
        let n = group.order();
        let mut comultiplication = ExactMatrix::zeros(n * n, n);
        let mut antipode = ExactMatrix::zeros(n, n);
        for g in group.elements() {
            comultiplication.set(g * n + g, g, Scalar::one());
            antipode.set(group.inverse(g), g, Scalar::one());
        }
        HopfStructure {
            group: group.clone(),
            comultiplication,
            counit: vec![Scalar::one(); n],
            antipode,
        }
    }

    /// Replaces the antipode, e.g. to build a negative control.
    pub fn with_antipode(mut self, antipode: ExactMatrix) -> Result<Self, LinalgError> {
        let n = self.group.order();
        if antipode.rows() != n || antipode.cols() != n {
            return Err(LinalgError::Dimension {
                expected: n,
                found: antipode.rows(),
            });
        }
        self.antipode = antipode;
        Ok(self)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    fn n(&self) -> usize {
        self.group.order()
    }

    fn delta(&self, g: usize) -> Vec<Scalar> {
        linalg::unit(self.n(), g)
    }

    fn comult(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.comultiplication.mul_vec(v).expect("dimension")
    }

    fn counit(&self, v: &[Scalar]) -> Scalar {
        linalg::dot(&self.counit, v)
    }

    fn apply_antipode(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.antipode.mul_vec(v).expect("dimension")
    }

    fn multiply(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let g = &self.group;
        let mut out = vec![Scalar::zero(); self.n()];
        for (x, p) in a.iter().enumerate().filter(|(_, p)| !p.is_zero()) {
            for (y, q) in b.iter().enumerate().filter(|(_, q)| !q.is_zero()) {
                out[g.mul(x, y)] += p * q;
            }
        }
        out
    }

    /// Multiplication map `m : A ⊗ A → A`.
    fn m(&self, t: &[Scalar]) -> Vec<Scalar> {
        let n = self.n();
        let mut out = vec![Scalar::zero(); n];
        for (i, x) in t.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            out[self.group.mul(i / n, i % n)] += x;
        }
        out
    }

    /// `(f ⊗ g)` applied to a tensor, for linear maps given as closures on
    /// basis vectors.
    fn tensor_map(
        &self,
        t: &[Scalar],
        left: &dyn Fn(usize) -> Vec<Scalar>,
        right: &dyn Fn(usize) -> Vec<Scalar>,
    ) -> Vec<Scalar> {
        let n = self.n();
        let mut out: Vec<Scalar> = Vec::new();
        for (i, x) in t.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            let l = left(i / n);
            let r = right(i % n);
            if out.is_empty() {
                out = vec![Scalar::zero(); l.len() * r.len()];
            }
            for (a, p) in l.iter().enumerate().filter(|(_, p)| !p.is_zero()) {
                for (b, q) in r.iter().enumerate().filter(|(_, q)| !q.is_zero()) {
                    out[a * r.len() + b] += x * &(p * q);
                }
            }
        }
        out
    }

    /// Checks every structure identity on the δ basis.
    pub fn verify(&self, prime: Prime) -> CheckReport {
        let g = &self.group;
        let n = self.n();
        let label = |x: usize| g.label(x).to_string();
        let pair = |x: usize, y: usize| format!("({},{})", g.label(x), g.label(y));
        let pairs = || {
            g.elements()
                .flat_map(move |x| g.elements().map(move |y| (x, y)))
        };
        let unit = self.delta(g.identity());
        let eps_times_unit =
            |v: &[Scalar]| unit.iter().map(|u| u * &self.counit(v)).collect::<Vec<_>>();
        let zero_or = |v: Vec<Scalar>| {
            if v.is_empty() {
                vec![Scalar::zero(); n * n * n]
            } else {
                v
            }
        };

        let mut checks = Vec::new();
        checks.push(AxiomCheck::run(
            "comultiplication_multiplicative",
            pairs().map(|(x, y)| {
                let lhs = self.comult(&self.delta(g.mul(x, y)));
                let dx =
                    TensorElement::from_coeffs(g, TensorFlavor::Plain, self.comult(&self.delta(x)));
                let dy =
                    TensorElement::from_coeffs(g, TensorFlavor::Plain, self.comult(&self.delta(y)));
                let rhs = dx.and_then(|a| a.mul(&dy?)).map(|t| t.coeffs);
                (pair(x, y), rhs.as_deref() == Ok(lhs.as_slice()))
            }),
        ));
        checks.push(AxiomCheck::run(
            "counit_multiplicative",
            pairs().map(|(x, y)| {
                let lhs = self.counit(&self.delta(g.mul(x, y)));
                let rhs = self.counit(&self.delta(x)) * self.counit(&self.delta(y));
                (pair(x, y), lhs == rhs)
            }),
        ));
        checks.push(AxiomCheck::run(
            "unital",
            std::iter::once({
                let delta_unit = self.comult(&unit);
                let mut one_one = vec![Scalar::zero(); n * n];
                one_one[g.identity() * n + g.identity()] = Scalar::one();
                (
                    label(g.identity()),
                    delta_unit == one_one
                        && self.counit(&unit).is_one()
                        && self.apply_antipode(&unit) == unit,
                )
            }),
        ));
        checks.push(AxiomCheck::run(
            "antipode_antimultiplicative",
            pairs().map(|(x, y)| {
                let lhs = self.apply_antipode(&self.delta(g.mul(x, y)));
                let rhs = self.multiply(
                    &self.apply_antipode(&self.delta(y)),
                    &self.apply_antipode(&self.delta(x)),
                );
                (pair(x, y), lhs == rhs)
            }),
        ));
        let id = |x: usize| self.delta(x);
        let comult_basis = |x: usize| self.comult(&self.delta(x));
        checks.push(AxiomCheck::run(
            "coassociativity",
            g.elements().map(|x| {
                let dx = self.comult(&self.delta(x));
                let lhs = zero_or(self.tensor_map(&dx, &comult_basis, &id));
                let rhs = zero_or(self.tensor_map(&dx, &id, &comult_basis));
                (label(x), lhs == rhs)
            }),
        ));
        let counit_basis = |x: usize| vec![self.counit(&self.delta(x))];
        checks.push(AxiomCheck::run(
            "left_counit",
            g.elements().map(|x| {
                // l_A((ε ⊗ id)Δ(x)) = x, with K ⊗ A ≅ A
                let v = self.tensor_map(&self.comult(&self.delta(x)), &counit_basis, &id);
                (label(x), v == self.delta(x))
            }),
        ));
        checks.push(AxiomCheck::run(
            "right_counit",
            g.elements().map(|x| {
                let v = self.tensor_map(&self.comult(&self.delta(x)), &id, &counit_basis);
                (label(x), v == self.delta(x))
            }),
        ));
        let s_basis = |x: usize| self.apply_antipode(&self.delta(x));
        checks.push(AxiomCheck::run(
            "left_antipode",
            g.elements().map(|x| {
                let t = self.tensor_map(&self.comult(&self.delta(x)), &s_basis, &id);
                (label(x), self.m(&t) == eps_times_unit(&self.delta(x)))
            }),
        ));
        checks.push(AxiomCheck::run(
            "right_antipode",
            g.elements().map(|x| {
                let t = self.tensor_map(&self.comult(&self.delta(x)), &id, &s_basis);
                (label(x), self.m(&t) == eps_times_unit(&self.delta(x)))
            }),
        ));
        checks.push(AxiomCheck::run(
            "antipode_involutive",
            g.elements().map(|x| {
                let ss = self.apply_antipode(&self.apply_antipode(&self.delta(x)));
                (label(x), ss == self.delta(x))
            }),
        ));
        CheckReport {
            group: g.name().to_string(),
            prime: prime.get(),
            checks,
        }
    }
}

/// Coassociativity, counit and antipode laws of `l(G)`, plus the
/// homomorphism properties of `Δ`, `ε` and `S`.
pub fn verify_hopf_axioms(group: &Arc<FiniteGroup>, prime: Prime) -> CheckReport {
    HopfStructure::of_group(group).verify(prime)
}

/// `E^*(φ)·c = E^*(φ·E(c))` for basis functionals `φ` on `A^e` and basis
/// `c ∈ A`, where `(ψ·c)(a) = ψ(ca)` on `A^*` and `(φ·u)(v) = φ(uv)` on
/// `(A^e)^*`. Also checks `E(ca) = E(c)E(a)` and the pairing form
/// `(E(c)E(β))(φ) = E(β)(φ·E(c))` of the identified double duals.
pub fn eq1_check(group: &Arc<FiniteGroup>, prime: Prime, exec: Execution) -> CheckReport {
    let g = group;
    let n = g.order();
    let e_t = e_matrix(g).transpose();
    let e_star = |phi: &[Scalar]| e_t.mul_vec(phi).expect("dimension");
    let tensor_label = |i: usize| format!("{}⊗{}", g.label(i / n), g.label(i % n));
    let basis_e = |c: usize| e_map(&Element::delta(g, c));

    // (φ·u)(v) = φ(uv) over all basis v of A^e; for v = δ_s⊗δ_t,
    // uv = Σ u_{a,b} δ_{as}⊗δ_{tb}.
    let act_on_functional = |phi: &[Scalar], u: &TensorElement| -> Vec<Scalar> {
        let support: Vec<_> = u.nonzero().collect();
        (0..n * n)
            .map(|v| {
                let (s, t) = (v / n, v % n);
                support
                    .iter()
                    .map(|&(a, b, x)| x * &phi[g.mul(a, s) * n + g.mul(t, b)])
                    .sum()
            })
            .collect()
    };
    // (ψ·c)(a) = ψ(ca) on A^*
    let act_on_dual = |psi: &[Scalar], c: usize| -> Vec<Scalar> {
        g.elements().map(|a| psi[g.mul(c, a)].clone()).collect()
    };

    let phis: Vec<usize> = (0..n * n).collect();
    let eq1_results: Vec<Vec<(String, bool)>> = exec::map(exec, &phis, |&i| {
        let phi = linalg::unit(n * n, i);
        let e_star_phi = e_star(&phi);
        g.elements()
            .map(|c| {
                let lhs = act_on_dual(&e_star_phi, c);
                let rhs = e_star(&act_on_functional(&phi, &basis_e(c)));
                (
                    format!("φ={} c={}", tensor_label(i), g.label(c)),
                    lhs == rhs,
                )
            })
            .collect()
    });
    let mut checks = vec![AxiomCheck::run(
        "dual_action_compatibility",
        eq1_results.into_iter().flatten(),
    )];

    checks.push(AxiomCheck::run(
        "e_map_multiplicative",
        g.elements().flat_map(|c| {
            g.elements().map(move |a| {
                let lhs = e_map(&Element::delta(g, g.mul(c, a)));
                let rhs = basis_e(c).mul(&basis_e(a)).expect("same group");
                (format!("({},{})", g.label(c), g.label(a)), lhs == rhs)
            })
        }),
    ));

    let products: Vec<Vec<TensorElement>> = g
        .elements()
        .map(|c| {
            g.elements()
                .map(|b| basis_e(c).mul(&basis_e(b)).expect("same group"))
                .collect()
        })
        .collect();
    let pairing_results: Vec<Vec<(String, bool)>> = exec::map(exec, &phis, |&i| {
        let phi = linalg::unit(n * n, i);
        let mut out = Vec::with_capacity(n * n);
        for c in g.elements() {
            let phi_ec = act_on_functional(&phi, &basis_e(c));
            for b in g.elements() {
                // (E(c)E(β))(φ) against E(β)(φ·E(c)), β = δ_b
                let lhs = &products[c][b].coeffs()[i];
                let rhs = &phi_ec[b * n + g.inverse(b)];
                out.push((
                    format!("φ={} c={} β={}", tensor_label(i), g.label(c), g.label(b)),
                    lhs == rhs,
                ));
            }
        }
        out
    });
    checks.push(AxiomCheck::run(
        "double_dual_pairing",
        pairing_results.into_iter().flatten(),
    ));

    CheckReport {
        group: g.name().to_string(),
        prime: prime.get(),
        checks,
    }
}

/// `A^e_E ⊗_A K`: the quotient of `A^e` by `u·E(a) - ε(a) u`, together with
/// the map induced by multiplication `u ⊗ 1 ↦ m(u)`.
#[derive(Debug, Clone)]
pub struct EnvelopingQuotient {
    group: Arc<FiniteGroup>,
    quotient: QuotientSpace,
    /// `n x dim` matrix of the induced map in quotient coordinates.
    induced: ExactMatrix,
}

impl EnvelopingQuotient {
    pub fn build(group: &Arc<FiniteGroup>, cap: usize) -> Result<Self, crate::Error> {
        let n = group.order();
        if n > cap {
            return Err(crate::group::GroupError::OrderAboveCap { order: n, cap }.into());
        }
        // Relations u·E(δ_a) - ε(δ_a) u for basis u = δ_x ⊗ δ_y.
        let relations = (0..n * n).flat_map(|u| {
            let (x, y) = (u / n, u % n);
            group.elements().map(move |a| {
                let moved = group.mul(x, a) * n + group.mul(group.inverse(a), y);
                vec![(moved, Scalar::one()), (u, -Scalar::one())]
            })
        });
        let quotient = linalg::quotient_basis_sparse(n * n, relations)?;
        let reps = quotient.representatives();
        let cols: Vec<Vec<Scalar>> = reps
            .iter()
            .map(|r| {
                let t = TensorElement::from_coeffs(group, TensorFlavor::Enveloping, r.clone())
                    .expect("length n²");
                pi0(&t).into_coeffs()
            })
            .collect();
        let mut induced = ExactMatrix::zeros(n, quotient.dim());
        for (j, col) in cols.iter().enumerate() {
            for (i, x) in col.iter().enumerate() {
                induced.set(i, j, x.clone());
            }
        }
        Ok(EnvelopingQuotient {
            group: group.clone(),
            quotient,
            induced,
        })
    }

    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    pub fn space(&self) -> &QuotientSpace {
        &self.quotient
    }

    /// Coordinates of the class of `u ⊗ 1`.
    pub fn class_of(&self, u: &TensorElement) -> Result<Vec<Scalar>, crate::Error> {
        Ok(self.quotient.project(u.coeffs())?)
    }

    pub fn representative(&self, class: &[Scalar]) -> TensorElement {
        TensorElement::from_coeffs(
            &self.group,
            TensorFlavor::Enveloping,
            self.quotient.lift(class),
        )
        .expect("length n²")
    }

    /// Image of a class under the induced map, in `A`.
    pub fn to_algebra(&self, class: &[Scalar]) -> Element {
        let v = self.induced.mul_vec(class).expect("dimension");
        Element::from_coeffs(&self.group, v).expect("length n")
    }

    /// Preimage of `a` under the induced map.
    pub fn from_algebra(&self, a: &Element) -> Result<Vec<Scalar>, crate::Error> {
        match linalg::solve(&self.induced, a.coeffs())? {
            Solution::Consistent { solution, .. } => Ok(solution),
            Solution::Inconsistent { .. } => Err(crate::Error::Invariant(format!(
                "induced map A^e_E ⊗_A K → A is not onto over {}",
                self.group.name()
            ))),
        }
    }

    pub fn induced_rank(&self) -> usize {
        linalg::rank(&self.induced)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuotientReport {
    pub group: String,
    pub prime: u64,
    pub quotient_dim: usize,
    pub expected_dim: usize,
    pub checks: Vec<AxiomCheck>,
}

impl QuotientReport {
    pub fn all_passed(&self) -> bool {
        self.quotient_dim == self.expected_dim && self.checks.iter().all(|c| c.passed)
    }

    pub fn bijective(&self) -> bool {
        self.checks
            .iter()
            .any(|c| c.name == "bijective" && c.passed)
    }
}

/// Builds `A^e_E ⊗_A K` as an explicit quotient and checks that
/// `u ⊗ 1 ↦ m(u)` is a well-defined bijection of left `A^e`-modules onto `A`.
pub fn lemma2_iso_check(
    group: &Arc<FiniteGroup>,
    prime: Prime,
    cap: usize,
) -> Result<QuotientReport, crate::Error> {
    let g = group;
    let n = g.order();
    let q = EnvelopingQuotient::build(g, cap)?;
    let tensor_label = |x: usize, y: usize| format!("{}⊗{}", g.label(x), g.label(y));

    let mut checks = vec![AxiomCheck::run(
        "antipode_invertible",
        g.elements().map(|x| {
            let d = Element::delta(g, x);
            (g.label(x).to_string(), antipode(&antipode(&d)) == d)
        }),
    )];
    checks.push(AxiomCheck::run(
        "well_defined",
        (0..n * n).flat_map(|u| {
            g.elements().map(move |a| {
                let base = TensorElement::basis(g, TensorFlavor::Enveloping, u / n, u % n);
                let rel = base
                    .mul(&e_map(&Element::delta(g, a)))
                    .and_then(|t| t.sub(&base))
                    .expect("same group");
                (
                    format!("u={} a={}", tensor_label(u / n, u % n), g.label(a)),
                    pi0(&rel).is_zero(),
                )
            })
        }),
    ));
    let bijective = q.dim() == n && q.induced_rank() == n;
    checks.push(AxiomCheck::run(
        "bijective",
        [(format!("dim {}", q.dim()), bijective)],
    ));
    // w·[rep] mapped through the quotient agrees with w·m(rep)
    let mut module_inputs = Vec::new();
    for w in 0..n * n {
        let wt = TensorElement::basis(g, TensorFlavor::Enveloping, w / n, w % n);
        for (j, rep) in q.space().representatives().into_iter().enumerate() {
            let rep_t = TensorElement::from_coeffs(g, TensorFlavor::Enveloping, rep)?;
            let class = q.class_of(&wt.mul(&rep_t)?)?;
            let lhs = q.to_algebra(&class);
            let rhs = enveloping_act(&wt, &q.to_algebra(&linalg::unit(q.dim(), j)))?;
            module_inputs.push((
                format!("w={} rep={}", tensor_label(w / n, w % n), j),
                lhs == rhs,
            ));
        }
    }
    checks.push(AxiomCheck::run("left_module_map", module_inputs));
    Ok(QuotientReport {
        group: g.name().to_string(),
        prime: prime.get(),
        quotient_dim: q.dim(),
        expected_dim: n,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grp(g: FiniteGroup) -> Arc<FiniteGroup> {
        Arc::new(g)
    }

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    #[test]
    fn enveloping_product_reverses_second_leg() {
        let g = grp(FiniteGroup::symmetric(3).unwrap());
        for (a, b, c, d) in [(1, 2, 3, 4), (5, 3, 2, 1), (4, 4, 1, 2)] {
            let x = TensorElement::basis(&g, TensorFlavor::Enveloping, a, b);
            let y = TensorElement::basis(&g, TensorFlavor::Enveloping, c, d);
            let xy = x.mul(&y).unwrap();
            assert_eq!(
                xy,
                TensorElement::basis(&g, TensorFlavor::Enveloping, g.mul(a, c), g.mul(d, b))
            );
            let xp = x.with_flavor(TensorFlavor::Plain);
            let yp = y.with_flavor(TensorFlavor::Plain);
            assert_eq!(
                xp.mul(&yp).unwrap(),
                TensorElement::basis(&g, TensorFlavor::Plain, g.mul(a, c), g.mul(b, d))
            );
        }
        let x = TensorElement::unit(&g, TensorFlavor::Plain);
        let y = TensorElement::unit(&g, TensorFlavor::Enveloping);
        assert!(x.mul(&y).is_err());
    }

    #[test]
    fn structure_maps_on_generators() {
        let g = grp(FiniteGroup::dihedral(3).unwrap());
        let e = g.identity();
        assert_eq!(
            comultiply(&Element::unit(&g)),
            TensorElement::unit(&g, TensorFlavor::Plain)
        );
        let sum = Element::delta(&g, 1).add(&Element::delta(&g, 4)).unwrap();
        let expected = TensorElement::basis(&g, TensorFlavor::Plain, 1, 1)
            .add(&TensorElement::basis(&g, TensorFlavor::Plain, 4, 4))
            .unwrap();
        assert_eq!(comultiply(&sum), expected);
        for x in g.elements() {
            let d = Element::delta(&g, x);
            assert_eq!(antipode(&d), Element::delta(&g, g.inverse(x)));
            assert_eq!(antipode(&antipode(&d)), d);
            assert_eq!(
                e_map(&d),
                TensorElement::basis(&g, TensorFlavor::Enveloping, x, g.inverse(x))
            );
            assert_eq!(pi0(&e_map(&d)), Element::unit(&g));
        }
        assert_eq!(antipode(&Element::ones(&g)), Element::ones(&g));
        assert_eq!(
            e_map(&Element::unit(&g)),
            TensorElement::basis(&g, TensorFlavor::Enveloping, e, e)
        );
        assert!(pi0(&TensorElement::zero(&g, TensorFlavor::Enveloping)).is_zero());
    }

    #[test]
    fn comultiplication_is_multiplicative_on_random_elements() {
        let g = grp(FiniteGroup::quaternion8().unwrap());
        let f = Element::from_coeffs(
            &g,
            (0..8)
                .map(|i| Scalar::new(i * 3 - 7, i + 1).unwrap())
                .collect(),
        )
        .unwrap();
        let h = Element::from_coeffs(
            &g,
            (0..8).map(|i| Scalar::new(5 - i * i, 2).unwrap()).collect(),
        )
        .unwrap();
        let lhs = comultiply(&f.convolve(&h).unwrap());
        let rhs = comultiply(&f).mul(&comultiply(&h)).unwrap();
        assert_eq!(lhs, rhs);
        // π_0(E(f)) = ε(f) δ_e
        assert_eq!(pi0(&e_map(&f)), Element::unit(&g).scale(&f.augmentation()));
    }

    #[test]
    fn hopf_axioms_hold() {
        for g in [
            FiniteGroup::cyclic(1).unwrap(),
            FiniteGroup::cyclic(6).unwrap(),
            FiniteGroup::symmetric(3).unwrap(),
        ] {
            let g = grp(g);
            let report = verify_hopf_axioms(&g, p(5));
            assert!(report.all_passed(), "{report:?}");
            assert_eq!(report.get("coassociativity").unwrap().checked, g.order());
        }
    }

    #[test]
    fn corrupted_antipode_fails() {
        let g = grp(FiniteGroup::symmetric(3).unwrap());
        let h = HopfStructure::of_group(&g)
            .with_antipode(ExactMatrix::identity(6))
            .unwrap();
        let report = h.verify(p(2));
        let left = report.get("left_antipode").unwrap();
        assert!(!left.passed);
        // exactly the elements with g² != e fail
        let expected: Vec<String> = g
            .elements()
            .filter(|&x| g.mul(x, x) != g.identity())
            .map(|x| g.label(x).to_string())
            .collect();
        assert_eq!(left.failures, expected);
        assert!(!report.get("antipode_antimultiplicative").unwrap().passed);
        assert!(report.get("coassociativity").unwrap().passed);
    }

    #[test]
    fn eq1_holds() {
        for g in [
            FiniteGroup::cyclic(1).unwrap(),
            FiniteGroup::cyclic(2).unwrap(),
            FiniteGroup::symmetric(3).unwrap(),
        ] {
            let g = grp(g);
            let r = eq1_check(&g, p(3), Execution::Sequential);
            assert!(r.all_passed(), "{r:?}");
            let n = g.order();
            assert_eq!(
                r.get("dual_action_compatibility").unwrap().checked,
                n * n * n
            );
        }
    }

    #[test]
    fn quotient_small_cases() {
        let trivial = grp(FiniteGroup::cyclic(1).unwrap());
        let r = lemma2_iso_check(&trivial, p(2), 24).unwrap();
        assert_eq!(r.quotient_dim, 1);
        assert!(r.all_passed());
        let c2 = grp(FiniteGroup::cyclic(2).unwrap());
        let r = lemma2_iso_check(&c2, p(3), 24).unwrap();
        assert_eq!(r.quotient_dim, 2);
        assert!(r.bijective() && r.all_passed());
        for q in [2u64, 3, 5, 7] {
            let cp = grp(FiniteGroup::cyclic(q as usize).unwrap());
            let r = lemma2_iso_check(&cp, p(q), 24).unwrap();
            assert_eq!(r.quotient_dim, q as usize);
            assert!(r.all_passed());
        }
        let s3 = grp(FiniteGroup::symmetric(3).unwrap());
        assert!(lemma2_iso_check(&s3, p(2), 4).is_err());
    }
}
