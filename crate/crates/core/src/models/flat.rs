//! Flat phase space `T*R^n` with the canonical bracket, the `O(n)` momentum
//! map `J = x ^ xi` and the reduction checks built on it.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::{rat_int, Gen, LaurentPoly, PresentedAlgebra};
use crate::derivation::{unit, Derivation, PoissonStructure};
use crate::error::{Error, Result};
use crate::models::{cone, MomentumData, ModelDescriptor};
use crate::report::{Check, CheckList};

/// Generators `x1..xn, xi1..xin`.
pub fn algebra(n: usize) -> PresentedAlgebra {
    let mut names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    names.extend((1..=n).map(|i| format!("xi{i}")));
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    PresentedAlgebra::free(&format!("flat{n}"), &refs)
}

fn x(i: usize) -> LaurentPoly {
    LaurentPoly::var((i - 1) as Gen)
}

fn xi(n: usize, i: usize) -> LaurentPoly {
    LaurentPoly::var((n + i - 1) as Gen)
}

/// `q(x^i, xi_j) = delta_ij`.
pub fn structure(alg: Arc<PresentedAlgebra>, n: usize) -> Result<PoissonStructure> {
    let mut q = PoissonStructure::new(alg);
    for i in 0..n {
        q.set(i as Gen, (n + i) as Gen, unit())?;
    }
    Ok(q)
}

/// `s1 = |x|^2`, `s2 = |xi|^2`, `s3 = <x, xi>`.
pub fn invariants(n: usize) -> [LaurentPoly; 3] {
    let mut s = [LaurentPoly::zero(), LaurentPoly::zero(), LaurentPoly::zero()];
    for i in 1..=n {
        s[0].add_assign_ref(&x(i).pow_u32(2));
        s[1].add_assign_ref(&xi(n, i).pow_u32(2));
        s[2].add_assign_ref(&(&x(i) * &xi(n, i)));
    }
    s
}

/// `<e_jk, J> = x^j xi_k - x^k xi_j`.
pub fn momentum_component(n: usize, j: usize, k: usize) -> Result<LaurentPoly> {
    if j == k || j == 0 || k == 0 || j > n || k > n {
        return Err(Error::InvalidInput(format!("e_{j}{k} is not a rotation generator for n = {n}")));
    }
    Ok(&(&x(j) * &xi(n, k)) - &(&x(k) * &xi(n, j)))
}

/// Declared action field of `e_jk`:
/// `xi_k d/dxi_j - xi_j d/dxi_k - x^j d/dx^k + x^k d/dx^j`,
/// i.e. minus the diagonal lift of the rotation `y^j d/dy^k - y^k d/dy^j`.
pub fn action_field(alg: Arc<PresentedAlgebra>, n: usize, j: usize, k: usize) -> Result<Derivation> {
    momentum_component(n, j, k)?;
    let mut images = BTreeMap::new();
    images.insert((n + j - 1) as Gen, xi(n, k));
    images.insert((n + k - 1) as Gen, -xi(n, j));
    images.insert((k - 1) as Gen, -x(j));
    images.insert((j - 1) as Gen, x(k));
    Ok(Derivation::new(alg, images))
}

/// The same field with the signs of the `x`-part exactly as in the printed
/// display `xi_k d/dxi_j - xi_j d/dxi_k + x^j d/dx^k - x^k d/dx^j`.
pub fn printed_action_field(alg: Arc<PresentedAlgebra>, n: usize, j: usize, k: usize) -> Result<Derivation> {
    momentum_component(n, j, k)?;
    let mut images = BTreeMap::new();
    images.insert((n + j - 1) as Gen, xi(n, k));
    images.insert((n + k - 1) as Gen, -xi(n, j));
    images.insert((k - 1) as Gen, x(j));
    images.insert((j - 1) as Gen, -x(k));
    Ok(Derivation::new(alg, images))
}

pub fn model(n: usize) -> Result<ModelDescriptor> {
    let alg = Arc::new(algebra(n));
    let q = structure(alg.clone(), n)?;
    let pairs = (1..=n).map(|i| (x(i), xi(n, i))).collect();
    let mut m = ModelDescriptor::assemble(
        &format!("flat{n}"),
        q,
        pairs,
        None,
        vec![format!("canonical bracket on T*R^{n}; momentum map J = x ^ xi")],
    )?;
    let mut components = Vec::new();
    let mut fields = Vec::new();
    for j in 1..=n {
        for k in (j + 1)..=n {
            components.push((format!("e{j}{k}"), momentum_component(n, j, k)?));
            fields.push(action_field(alg.clone(), n, j, k)?);
        }
    }
    let [s1, s2, s3] = invariants(n);
    m.momentum = Some(MomentumData {
        components,
        action_fields: fields,
        invariants: vec![("s1".into(), s1), ("s2".into(), s2), ("s3".into(), s3)],
    });
    Ok(m)
}

/// Brackets of the quadratic invariants computed in `T*R^n` against the
/// reduced table `q(s1,s2) = 4 s3`, `q(s1,s3) = 2 s1`, `q(s2,s3) = -2 s2`.
pub fn pullback_check(n: usize) -> Result<CheckList> {
    if n < 2 {
        return Err(Error::InvalidInput("pullback check needs n >= 2".into()));
    }
    let alg = Arc::new(algebra(n));
    let q = structure(alg.clone(), n)?;
    let s = invariants(n);
    let calg = Arc::new(cone::algebra());
    let red = cone::structure(calg.clone())?;
    let mut bind = std::collections::HashMap::new();
    for (i, si) in s.iter().enumerate() {
        bind.insert(i as Gen, si.clone());
    }
    let mut out = CheckList::default();
    for i in 0..3 {
        for j in 0..3 {
            let lhs = q.bracket(&s[i], &s[j])?;
            let rhs = red.entry(i as Gen, j as Gen).substitute(&bind)?;
            let diff = &lhs - &rhs;
            out.push(Check::new(
                format!("flat{n}/pullback/s{}s{}", i + 1, j + 1),
                format!("q(s{}, s{}) = {}", i + 1, j + 1, calg.format(&red.entry(i as Gen, j as Gen))),
                diff.is_zero(),
                alg.format(&diff),
            ));
        }
    }
    Ok(out)
}

/// `q(<e_jk, J>, a)` against the declared action field for every rotation
/// generator and every coordinate, plus invariance of `s1, s2, s3`.
pub fn hamiltonian_condition_check(n: usize) -> Result<CheckList> {
    if n < 2 {
        return Err(Error::InvalidInput("hamiltonian condition needs n >= 2".into()));
    }
    let alg = Arc::new(algebra(n));
    let q = structure(alg.clone(), n)?;
    let mut out = CheckList::default();
    let mut printed_mismatch = 0usize;
    for j in 1..=n {
        for k in (j + 1)..=n {
            let c = momentum_component(n, j, k)?;
            let d = action_field(alg.clone(), n, j, k)?;
            let printed = printed_action_field(alg.clone(), n, j, k)?;
            for g in 0..(2 * n) as Gen {
                let a = LaurentPoly::var(g);
                let lhs = q.bracket(&c, &a)?;
                let diff = &lhs - &d.apply(&a)?;
                out.push(Check::new(
                    format!("flat{n}/hamiltonian/e{j}{k}/{}", alg.gen_name(g)),
                    format!("q(<e{j}{k}, J>, {0}) = dA(e{j}{k})({0})", alg.gen_name(g)),
                    diff.is_zero(),
                    alg.format(&diff),
                ));
                if !q.algebra().poly_equal(&lhs, &printed.apply(&a)?)? {
                    printed_mismatch += 1;
                }
            }
            for (name, s) in ["s1", "s2", "s3"].iter().zip(invariants(n)) {
                let v = q.bracket(&c, &s)?;
                out.push(Check::new(
                    format!("flat{n}/hamiltonian/e{j}{k}/{name}"),
                    format!("q(<e{j}{k}, J>, {name}) = 0"),
                    v.is_zero(),
                    alg.format(&v),
                ));
            }
        }
    }
    if printed_mismatch > 0 {
        out.note(format!(
            "flat{n}: the printed action field (x-part signs +x^j d/dx^k - x^k d/dx^j) disagrees with \
             q(<e_jk, J>, .) on {printed_mismatch} coordinate evaluations; the derived field has the x-part negated"
        ));
    }
    Ok(out)
}

/// For each momentum component `c` and invariant `b`, `q(c, b) = 0`.
pub fn invariant_closure_check(model: &ModelDescriptor) -> Result<CheckList> {
    let mom = model
        .momentum
        .as_ref()
        .ok_or_else(|| Error::InvalidInput(format!("model {} has no momentum data", model.name)))?;
    let mut out = CheckList::default();
    for (cl, c) in &mom.components {
        for (bl, b) in &mom.invariants {
            let v = model.structure.bracket(c, b)?;
            out.push(Check::new(
                format!("{}/closure/{cl}/{bl}", model.name),
                format!("q({cl}, {bl}) = 0"),
                v.is_zero(),
                model.format(&v),
            ));
        }
        let v = model.structure.bracket(c, &LaurentPoly::constant(rat_int(1)))?;
        out.push(Check::new(
            format!("{}/closure/{cl}/1", model.name),
            format!("q({cl}, 1) = 0"),
            v.is_zero(),
            model.format(&v),
        ));
    }
    Ok(out)
}
