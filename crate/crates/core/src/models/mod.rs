//! Built-in Poisson spaces: flat phase space, the reduced cone, reduced
//! pairs of 2x2 matrices and three singular quartic surfaces.

use std::sync::Arc;

use crate::algebra::{LaurentPoly, PresentedAlgebra};
use crate::derivation::{DarbouxSystem, Derivation, PoissonStructure};
use crate::error::{Error, Result};
use crate::parse::parse_expr;
use crate::report::{Check, CheckList};

pub mod cone;
pub mod flat;
pub mod k3;
pub mod matrices;

pub use k3::K3Variant;

/// Momentum components and the action fields they generate.
#[derive(Clone, Debug)]
pub struct MomentumData {
    /// `(label, component)`
    pub components: Vec<(String, LaurentPoly)>,
    pub action_fields: Vec<Derivation>,
    /// Generators of the invariant subalgebra, as elements of the same algebra.
    pub invariants: Vec<(String, LaurentPoly)>,
}

#[derive(Clone, Debug)]
pub struct ModelDescriptor {
    pub name: String,
    pub algebra: Arc<PresentedAlgebra>,
    pub structure: Arc<PoissonStructure>,
    /// Pairs as printed for this model, verified or not.
    pub pairs: Vec<(LaurentPoly, LaurentPoly)>,
    /// Present when `pairs` pass every Darboux relation.
    pub darboux: Option<Arc<DarbouxSystem>>,
    pub relation: Option<LaurentPoly>,
    pub momentum: Option<MomentumData>,
    pub notes: Vec<String>,
}

impl ModelDescriptor {
    pub(crate) fn assemble(
        name: &str,
        structure: PoissonStructure,
        pairs: Vec<(LaurentPoly, LaurentPoly)>,
        relation: Option<LaurentPoly>,
        notes: Vec<String>,
    ) -> Result<Self> {
        let structure = Arc::new(structure);
        let algebra = structure.algebra().clone();
        let darboux = if pairs.is_empty() {
            None
        } else {
            DarbouxSystem::new(structure.clone(), pairs.clone()).ok().map(Arc::new)
        };
        let model = ModelDescriptor {
            name: name.to_string(),
            algebra,
            structure,
            pairs,
            darboux,
            relation,
            momentum: None,
            notes,
        };
        let tangency = model.tangency_check()?;
        if !tangency.all_pass() {
            let bad: Vec<String> = tangency.failures().map(|c| c.id.clone()).collect();
            return Err(Error::InvalidInput(format!(
                "{name}: Darboux fields do not annihilate the relation: {}",
                bad.join(", ")
            )));
        }
        Ok(model)
    }

    pub fn parse(&self, text: &str) -> Result<LaurentPoly> {
        parse_expr(text, &self.algebra)
    }

    pub fn format(&self, p: &LaurentPoly) -> String {
        self.algebra.format(p)
    }

    /// The Darboux system, or an error naming the failed relations.
    pub fn darboux(&self) -> Result<&Arc<DarbouxSystem>> {
        match &self.darboux {
            Some(d) => Ok(d),
            None if self.pairs.is_empty() => Err(Error::InvalidInput(format!(
                "model {} has no Darboux pairs",
                self.name
            ))),
            None => {
                let why = DarbouxSystem::new(self.structure.clone(), self.pairs.clone())
                    .err()
                    .map(|e| match e {
                        Error::InvalidInput(msg) => msg,
                        e => e.to_string(),
                    })
                    .unwrap_or_default();
                Err(Error::InvalidInput(format!("model {}: {why}", self.name)))
            }
        }
    }

    /// Every Darboux field annihilates the relation, computed from the raw
    /// (unreduced) relation polynomial.
    pub fn tangency_check(&self) -> Result<CheckList> {
        let mut out = CheckList::default();
        let (Some(sys), Some(rel)) = (&self.darboux, &self.relation) else {
            return Ok(out);
        };
        for k in 0..sys.n() {
            for (label, d) in [("A", sys.a_field(k)), ("B", sys.b_field(k))] {
                let v = d.apply(rel)?;
                out.push(Check::new(
                    format!("{}/tangency/{label}{}", self.name, k + 1),
                    format!("{label}{}(relation) = 0", k + 1),
                    v.is_zero(),
                    self.format(&v),
                ));
            }
        }
        Ok(out)
    }
}

/// Canonical names accepted by [`build_model`].
pub fn model_names() -> Vec<&'static str> {
    vec![
        "flat2",
        "flat3",
        "cone",
        "matrices",
        "matrix-entries",
        "k3-II",
        "k3-III",
        "k3-IV",
    ]
}

/// Builds a model by name. Accepts `flatN` / `canonical_flat(N)`,
/// `cone` / `cone_reduced`, `matrices` / `matrices_reduced`, and
/// `k3-II` / `k3(II)` (likewise III, IV).
pub fn build_model(name: &str) -> Result<ModelDescriptor> {
    let key = name.trim().to_ascii_lowercase();
    let inner = |prefix: &str| -> Option<String> {
        key.strip_prefix(prefix)
            .map(|r| r.trim_start_matches(['(', '-', '_']).trim_end_matches(')').to_string())
    };
    match key.as_str() {
        "cone" | "cone_reduced" => return cone::model(),
        "matrices" | "matrices_reduced" => return matrices::model(),
        "matrix-entries" | "matrix_entries" => return matrices::entries_model(),
        _ => {}
    }
    if let Some(n) = inner("canonical_flat").or_else(|| inner("flat")) {
        let n: usize = n.parse().map_err(|_| Error::UnknownModel(name.to_string()))?;
        if n == 0 {
            return Err(Error::UnknownModel(name.to_string()));
        }
        return flat::model(n);
    }
    if let Some(v) = inner("k3") {
        let variant = match v.as_str() {
            "ii" => K3Variant::II,
            "iii" => K3Variant::III,
            "iv" => K3Variant::IV,
            _ => return Err(Error::UnknownModel(name.to_string())),
        };
        return k3::model(variant);
    }
    Err(Error::UnknownModel(name.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn aliases_resolve() {
        assert_eq!(build_model("cone_reduced").unwrap().name, "cone");
        assert_eq!(build_model("canonical_flat(2)").unwrap().name, "flat2");
        assert_eq!(build_model("k3(IV)").unwrap().name, "k3-IV");
    }

    #[test]
    fn unknown_name() {
        assert!(matches!(build_model("torus"), Err(Error::UnknownModel(_))));
        assert!(matches!(build_model("k3-V"), Err(Error::UnknownModel(_))));
    }
}
