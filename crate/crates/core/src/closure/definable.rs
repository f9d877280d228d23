use std::sync::Arc;

use serde_json::{json, Value};

use super::{enumerate_models, ModelClass, ModelUniverse};
use crate::error::{Error, Result};
use crate::semantics::{for_each_assignment, holds, sequent_counterexample, sequent_valid, PartialStructure};
use crate::syntax::{sequent_to_string, HornSequent, TheoryMorphism};

/// Representatives satisfying every sequent in `extra`.
pub fn definable_class(universe: &Arc<ModelUniverse>, extra: &[HornSequent]) -> ModelClass {
    let members = universe.models.iter().map(|m| extra.iter().all(|s| sequent_valid(m, s))).collect();
    ModelClass { universe: universe.clone(), members }
}

#[derive(Clone, Debug)]
pub struct Countermodel {
    /// Index of the source axiom.
    pub axiom: usize,
    /// The translated axiom, printed over the target signature.
    pub translated: String,
    pub model: Arc<PartialStructure>,
    /// Labels of the falsifying assignment, in context order.
    pub assignment: Vec<String>,
}

#[derive(Clone, Debug)]
pub enum MorphismVerdict {
    NoCounterexampleUpTo(usize),
    /// One smallest countermodel per failing axiom, in axiom order.
    Countermodels(Vec<Countermodel>),
}

impl MorphismVerdict {
    pub fn to_json(&self) -> Value {
        match self {
            MorphismVerdict::NoCounterexampleUpTo(k) => json!({ "verdict": "no-counterexample", "bound": k }),
            MorphismVerdict::Countermodels(cs) => {
                let cs: Vec<Value> = cs
                    .iter()
                    .map(|c| {
                        json!({
                            "axiom": c.axiom,
                            "translated": c.translated,
                            "model": c.model.to_json(),
                            "assignment": c.assignment,
                        })
                    })
                    .collect();
                json!({ "verdict": "countermodels", "countermodels": cs })
            }
        }
    }
}

/// Checks every translated source axiom on every target model with carriers
/// of size ≤ `k`. For each failing axiom the smallest countermodel with a
/// falsifying assignment that keeps distinct variables of a sort apart is
/// reported, or the smallest countermodel if there is none such. Passing is a
/// necessary condition for `rho` being a theory morphism.
pub fn check_theory_morphism_bounded(rho: &TheoryMorphism, k: usize) -> Result<MorphismVerdict> {
    let translated = rho.source.axioms.iter().map(|a| rho.translate(a)).collect::<Result<Vec<_>>>()?;
    let universe = enumerate_models(&rho.target, k)?;
    let mut found = Vec::new();
    for (i, seq) in translated.iter().enumerate() {
        let hit = universe
            .models
            .iter()
            .find_map(|m| injective_counterexample(m, seq).map(|env| (m, env)))
            .or_else(|| universe.models.iter().find_map(|m| sequent_counterexample(m, seq).map(|env| (m, env))));
        if let Some((m, env)) = hit {
            let assignment = env.iter().zip(&seq.context).map(|(&a, v)| m.carriers[v.sort][a].clone()).collect();
            found.push(Countermodel {
                axiom: i,
                translated: sequent_to_string(rho.target.sig(), seq),
                model: m.clone(),
                assignment,
            });
        }
    }
    Ok(if found.is_empty() { MorphismVerdict::NoCounterexampleUpTo(k) } else { MorphismVerdict::Countermodels(found) })
}

fn injective_counterexample(m: &PartialStructure, seq: &HornSequent) -> Option<Vec<usize>> {
    let ctx = &seq.context;
    let mut found = None;
    for_each_assignment(m, ctx, |env| {
        let injective =
            (0..env.len()).all(|i| (0..i).all(|j| ctx[i].sort != ctx[j].sort || env[i] != env[j]));
        if injective && holds(m, &seq.premise, env) && !holds(m, &seq.conclusion, env) {
            found = Some(env.to_vec());
            return false;
        }
        true
    });
    found
}

/// Sequents over the universe's signature, rejecting ill-sorted input.
pub fn parse_extra(universe: &ModelUniverse, text: &str) -> Result<Vec<HornSequent>> {
    let seqs = crate::syntax::parse_sequents(text, universe.theory.sig())?;
    if seqs.is_empty() {
        return Err(Error::IllFormed("no sequents given".into()));
    }
    Ok(seqs)
}
