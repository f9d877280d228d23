use std::fmt;
use std::sync::Arc;

use super::{check_homomorphism, Homomorphism, PartialStructure};
use crate::error::{Error, Result};

type StageFn = dyn Fn(usize) -> PartialStructure + Send + Sync;
type LinkFn = dyn Fn(usize) -> Vec<Vec<usize>> + Send + Sync;
type LabelFn = dyn Fn(usize) -> String + Send + Sync;

/// An ω-chain `X_0 → X_1 → ⋯` given by generators for the stages and the
/// connecting maps `X_n → X_{n+1}`.
#[derive(Clone)]
pub struct ChainRecipe {
    pub name: String,
    stage: Arc<StageFn>,
    link: Arc<LinkFn>,
    label: Arc<LabelFn>,
    /// Stage from which no new function entries or relation tuples appear.
    pub fact_stabilization: Option<usize>,
}

impl fmt::Debug for ChainRecipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ChainRecipe")
            .field("name", &self.name)
            .field("fact_stabilization", &self.fact_stabilization)
            .finish_non_exhaustive()
    }
}

impl ChainRecipe {
    pub fn new(
        name: impl Into<String>,
        stage: impl Fn(usize) -> PartialStructure + Send + Sync + 'static,
        link: impl Fn(usize) -> Vec<Vec<usize>> + Send + Sync + 'static,
    ) -> Self {
        ChainRecipe {
            name: name.into(),
            stage: Arc::new(stage),
            link: Arc::new(link),
            label: Arc::new(|n| format!("X_{n}")),
            fact_stabilization: None,
        }
    }

    /// Display names for the stages, `X_n` by default.
    pub fn with_labels(mut self, label: impl Fn(usize) -> String + Send + Sync + 'static) -> Self {
        self.label = Arc::new(label);
        self
    }

    pub fn label(&self, n: usize) -> String {
        (self.label)(n)
    }

    /// The chain `X → X → ⋯` of identities.
    pub fn constant(name: impl Into<String>, x: PartialStructure) -> Self {
        let ids: Vec<Vec<usize>> = x.carriers.iter().map(|c| (0..c.len()).collect()).collect();
        let x = Arc::new(x);
        ChainRecipe::new(name, move |_| (*x).clone(), move |_| ids.clone()).with_fact_stabilization(0)
    }

    pub fn with_fact_stabilization(mut self, n: usize) -> Self {
        self.fact_stabilization = Some(n);
        self
    }

    pub fn stage(&self, n: usize) -> PartialStructure {
        (self.stage)(n)
    }

    /// The verified connecting map `X_n → X_{n+1}`.
    pub fn link(&self, n: usize) -> Result<Homomorphism> {
        let (a, b) = (self.stage(n), self.stage(n + 1));
        let maps = (self.link)(n);
        check_homomorphism(&maps, &a, &b)
            .map_err(|v| Error::NotHomomorphism(format!("{} link {n} -> {}: {v}", self.name, n + 1)))?;
        Ok(Homomorphism::new_unchecked(Arc::new(a), Arc::new(b), maps))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ColimitOutcome {
    /// Carriers are constant from stage `index` on; `structure` lives on the
    /// carriers of that stage.
    Stable { index: usize, structure: PartialStructure },
    NotStable { reason: String },
}

fn is_bijective(h: &Homomorphism) -> bool {
    h.source.sizes() == h.target.sizes() && h.is_injective()
}

/// Colimit of an eventually carrier-stable chain, looking at the stages
/// `X_0, …, X_{horizon-1}`.
///
/// Finds the least `N` such that every link from `X_N` on is bijective, with
/// at least one link in the tail when `horizon > 1`. The facts of the colimit
/// are those of the last stage considered (the declared fact-stabilization
/// stage if it lies beyond the horizon), pulled back to `X_N` along the
/// composite bijection.
pub fn chain_colimit(c: &ChainRecipe, horizon: usize) -> Result<ColimitOutcome> {
    if horizon == 0 {
        return Err(Error::IllFormed("horizon must be positive".into()));
    }
    let last = c.fact_stabilization.map_or(horizon - 1, |n| n.max(horizon - 1));
    let links = (0..last).map(|n| c.link(n)).collect::<Result<Vec<_>>>()?;
    let candidates = (horizon - 1).max(1).min(last.max(1));
    let Some(start) = (0..candidates).find(|&n| links[n..].iter().all(is_bijective)) else {
        let n = links.iter().rposition(|h| !is_bijective(h)).unwrap_or(0);
        return Ok(ColimitOutcome::NotStable {
            reason: format!("link {n} -> {} is not bijective on carriers", n + 1),
        });
    };
    if links.is_empty() {
        return Ok(ColimitOutcome::Stable { index: 0, structure: c.stage(0) });
    }
    let mut composite = Homomorphism::identity(links[start].source.clone());
    for h in &links[start..] {
        composite = composite.then(h)?;
    }
    let base = &*composite.source;
    let top = &*composite.target;
    let inverse: Vec<Vec<usize>> = composite
        .maps
        .iter()
        .map(|m| {
            let mut inv = vec![0; m.len()];
            for (a, &b) in m.iter().enumerate() {
                inv[b] = a;
            }
            inv
        })
        .collect();
    let mut out = PartialStructure::with_carriers(base.signature_name.clone(), base.sig.clone(), base.carriers.clone());
    for (f, sym) in base.sig.functions.iter().enumerate() {
        for (tuple, v) in top.func_entries(f) {
            let t: Vec<usize> = tuple.iter().zip(&sym.args).map(|(&b, &s)| inverse[s][b]).collect();
            out.set_func(f, &t, Some(inverse[sym.result][v]));
        }
    }
    for (r, sym) in base.sig.relations.iter().enumerate() {
        for tuple in top.rel_tuples(r) {
            let t: Vec<usize> = tuple.iter().zip(&sym.args).map(|(&b, &s)| inverse[s][b]).collect();
            out.set_rel(r, &t, true);
        }
    }
    Ok(ColimitOutcome::Stable { index: start, structure: out })
}
