use std::sync::Arc;

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::syntax::{FuncId, RelId, Signature, SortId};

/// A finite partial Σ-structure.
///
/// Function and relation tables are dense: the entry for an argument tuple
/// `(a1, …, an)` lives at its mixed-radix index over the argument carriers
/// (see [`PartialStructure::tuple_index`]). `None` means undefined.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PartialStructure {
    /// Name of the theory or signature this structure interprets.
    pub signature_name: String,
    pub sig: Arc<Signature>,
    pub carriers: Vec<Vec<String>>,
    pub funcs: Vec<Vec<Option<usize>>>,
    pub rels: Vec<Vec<bool>>,
}

pub fn tuple_count(sizes: &[usize], args: &[SortId]) -> usize {
    args.iter().map(|&s| sizes[s]).product()
}

impl PartialStructure {
    /// Carriers labelled `0, 1, …`; every function undefined, every relation empty.
    pub fn empty(name: impl Into<String>, sig: Arc<Signature>, sizes: &[usize]) -> Self {
        let carriers = sizes.iter().map(|&n| (0..n).map(|i| i.to_string()).collect()).collect();
        Self::with_carriers(name, sig, carriers)
    }

    pub fn with_carriers(name: impl Into<String>, sig: Arc<Signature>, carriers: Vec<Vec<String>>) -> Self {
        let sizes: Vec<usize> = carriers.iter().map(Vec::len).collect();
        let funcs = sig.functions.iter().map(|f| vec![None; tuple_count(&sizes, &f.args)]).collect();
        let rels = sig.relations.iter().map(|r| vec![false; tuple_count(&sizes, &r.args)]).collect();
        PartialStructure { signature_name: name.into(), sig, carriers, funcs, rels }
    }

    pub fn size(&self, sort: SortId) -> usize {
        self.carriers[sort].len()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.carriers.iter().map(Vec::len).collect()
    }

    pub fn total_size(&self) -> usize {
        self.carriers.iter().map(Vec::len).sum()
    }

    pub fn tuple_index(&self, args: &[SortId], tuple: &[usize]) -> usize {
        args.iter().zip(tuple).fold(0, |acc, (&s, &a)| acc * self.size(s) + a)
    }

    pub fn decode_tuple(&self, args: &[SortId], mut index: usize) -> Vec<usize> {
        let mut out = vec![0; args.len()];
        for (slot, &s) in out.iter_mut().zip(args).rev() {
            let n = self.size(s);
            *slot = index % n;
            index /= n;
        }
        out
    }

    pub fn func(&self, f: FuncId, tuple: &[usize]) -> Option<usize> {
        self.funcs[f][self.tuple_index(&self.sig.functions[f].args, tuple)]
    }

    pub fn set_func(&mut self, f: FuncId, tuple: &[usize], value: Option<usize>) {
        let i = self.tuple_index(&self.sig.functions[f].args, tuple);
        self.funcs[f][i] = value;
    }

    pub fn rel(&self, r: RelId, tuple: &[usize]) -> bool {
        self.rels[r][self.tuple_index(&self.sig.relations[r].args, tuple)]
    }

    pub fn set_rel(&mut self, r: RelId, tuple: &[usize], value: bool) {
        let i = self.tuple_index(&self.sig.relations[r].args, tuple);
        self.rels[r][i] = value;
    }

    /// Defined entries of `f` as `(argument tuple, value)`.
    pub fn func_entries(&self, f: FuncId) -> impl Iterator<Item = (Vec<usize>, usize)> + '_ {
        let args = &self.sig.functions[f].args;
        self.funcs[f].iter().enumerate().filter_map(move |(i, v)| v.map(|v| (self.decode_tuple(args, i), v)))
    }

    pub fn rel_tuples(&self, r: RelId) -> impl Iterator<Item = Vec<usize>> + '_ {
        let args = &self.sig.relations[r].args;
        self.rels[r].iter().enumerate().filter(|(_, &b)| b).map(move |(i, _)| self.decode_tuple(args, i))
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidStructure(m));
        if self.carriers.len() != self.sig.sorts.len() {
            return bad(format!("expected {} carriers, got {}", self.sig.sorts.len(), self.carriers.len()));
        }
        let sizes = self.sizes();
        for (f, sym) in self.sig.functions.iter().enumerate() {
            let table = &self.funcs[f];
            if table.len() != tuple_count(&sizes, &sym.args) {
                return bad(format!("table of `{}` has the wrong length", sym.name));
            }
            if table.iter().flatten().any(|&v| v >= sizes[sym.result]) {
                return bad(format!("`{}` has a value outside its result carrier", sym.name));
            }
        }
        for (r, sym) in self.sig.relations.iter().enumerate() {
            if self.rels[r].len() != tuple_count(&sizes, &sym.args) {
                return bad(format!("table of `{}` has the wrong length", sym.name));
            }
        }
        Ok(())
    }

    pub fn element(&self, sort: SortId, label: &str) -> Option<usize> {
        self.carriers[sort].iter().position(|l| l == label)
    }

    pub fn to_json(&self) -> Value {
        let sig = &self.sig;
        let carriers: Map<String, Value> =
            sig.sorts.iter().zip(&self.carriers).map(|(s, c)| (s.clone(), json!(c))).collect();
        let mut functions = Map::new();
        for (f, sym) in sig.functions.iter().enumerate() {
            let rows: Vec<Value> = self
                .func_entries(f)
                .map(|(tuple, v)| {
                    let mut row: Vec<&str> =
                        tuple.iter().zip(&sym.args).map(|(&a, &s)| self.carriers[s][a].as_str()).collect();
                    row.push(&self.carriers[sym.result][v]);
                    json!(row)
                })
                .collect();
            functions.insert(sym.name.clone(), Value::Array(rows));
        }
        let mut relations = Map::new();
        for (r, sym) in sig.relations.iter().enumerate() {
            let rows: Vec<Value> = self
                .rel_tuples(r)
                .map(|tuple| {
                    let row: Vec<&str> =
                        tuple.iter().zip(&sym.args).map(|(&a, &s)| self.carriers[s][a].as_str()).collect();
                    json!(row)
                })
                .collect();
            relations.insert(sym.name.clone(), Value::Array(rows));
        }
        json!({
            "signature": self.signature_name,
            "carriers": carriers,
            "functions": functions,
            "relations": relations,
        })
    }

    /// Reads the JSON form; `resolve` maps the `"signature"` name to its signature.
    pub fn from_json(value: &Value, resolve: impl Fn(&str) -> Option<Arc<Signature>>) -> Result<Self> {
        let bad = |m: &str| Error::InvalidStructure(m.to_string());
        let name = value.get("signature").and_then(Value::as_str).ok_or_else(|| bad("missing `signature`"))?;
        let sig = resolve(name).ok_or_else(|| Error::Unknown { kind: "signature", name: name.to_string() })?;
        let empty = Map::new();
        let section = |key: &str| -> Result<&Map<String, Value>> {
            match value.get(key) {
                None => Ok(&empty),
                Some(v) => v.as_object().ok_or_else(|| bad(&format!("`{key}` must be an object"))),
            }
        };
        let (carrier_obj, func_obj, rel_obj) = (section("carriers")?, section("functions")?, section("relations")?);
        for key in carrier_obj.keys() {
            if sig.sort_id(key).is_none() {
                return Err(Error::Unknown { kind: "sort", name: key.clone() });
            }
        }
        let mut carriers = Vec::new();
        for s in &sig.sorts {
            let labels: Vec<String> = match carrier_obj.get(s) {
                None => Vec::new(),
                Some(v) => serde_json::from_value(v.clone())?,
            };
            let mut seen = std::collections::BTreeSet::new();
            if let Some(dup) = labels.iter().find(|l| !seen.insert(l.as_str())) {
                return Err(bad(&format!("duplicate label `{dup}` in sort `{s}`")));
            }
            carriers.push(labels);
        }
        let mut m = PartialStructure::with_carriers(name, sig.clone(), carriers);
        let lookup = |m: &PartialStructure, s: SortId, l: &str| {
            m.element(s, l).ok_or_else(|| bad(&format!("`{l}` is not an element of sort `{}`", sig.sorts[s])))
        };
        for (fname, rows) in func_obj {
            let f = sig.function_id(fname).ok_or_else(|| Error::Unknown { kind: "function", name: fname.clone() })?;
            let sym = &sig.functions[f];
            let rows: Vec<Vec<String>> = serde_json::from_value(rows.clone())?;
            for row in rows {
                if row.len() != sym.args.len() + 1 {
                    return Err(bad(&format!("row of `{fname}` has the wrong length")));
                }
                let tuple = row[..sym.args.len()]
                    .iter()
                    .zip(&sym.args)
                    .map(|(l, &s)| lookup(&m, s, l))
                    .collect::<Result<Vec<_>>>()?;
                let v = lookup(&m, sym.result, &row[sym.args.len()])?;
                if m.func(f, &tuple).is_some_and(|old| old != v) {
                    return Err(bad(&format!("`{fname}` is not single-valued")));
                }
                m.set_func(f, &tuple, Some(v));
            }
        }
        for (rname, rows) in rel_obj {
            let r = sig.relation_id(rname).ok_or_else(|| Error::Unknown { kind: "relation", name: rname.clone() })?;
            let args = sig.relations[r].args.clone();
            let rows: Vec<Vec<String>> = serde_json::from_value(rows.clone())?;
            for row in rows {
                if row.len() != args.len() {
                    return Err(bad(&format!("row of `{rname}` has the wrong length")));
                }
                let tuple = row.iter().zip(&args).map(|(l, &s)| lookup(&m, s, l)).collect::<Result<Vec<_>>>()?;
                m.set_rel(r, &tuple, true);
            }
        }
        Ok(m)
    }

    /// A copy whose elements are permuted: element `a` of sort `s` becomes
    /// element `perms[s][a]`, labels included.
    pub fn relabel(&self, perms: &[Vec<usize>]) -> Self {
        let mut carriers: Vec<Vec<String>> = self.carriers.iter().map(|c| vec![String::new(); c.len()]).collect();
        for (s, c) in self.carriers.iter().enumerate() {
            for (a, l) in c.iter().enumerate() {
                carriers[s][perms[s][a]] = l.clone();
            }
        }
        let mut out = PartialStructure::with_carriers(self.signature_name.clone(), self.sig.clone(), carriers);
        for (f, sym) in self.sig.functions.iter().enumerate() {
            for (tuple, v) in self.func_entries(f) {
                let t: Vec<usize> = tuple.iter().zip(&sym.args).map(|(&a, &s)| perms[s][a]).collect();
                out.set_func(f, &t, Some(perms[sym.result][v]));
            }
        }
        for (r, sym) in self.sig.relations.iter().enumerate() {
            for tuple in self.rel_tuples(r) {
                let t: Vec<usize> = tuple.iter().zip(&sym.args).map(|(&a, &s)| perms[s][a]).collect();
                out.set_rel(r, &t, true);
            }
        }
        out
    }

    /// Short human-readable rendering used in reports and CLI output.
    pub fn summary(&self) -> String {
        let mut parts = Vec::new();
        for (s, c) in self.sig.sorts.iter().zip(&self.carriers) {
            parts.push(format!("{s}={{{}}}", c.join(",")));
        }
        for (f, sym) in self.sig.functions.iter().enumerate() {
            let entries: Vec<String> = self
                .func_entries(f)
                .map(|(t, v)| {
                    let args: Vec<&str> =
                        t.iter().zip(&sym.args).map(|(&a, &s)| self.carriers[s][a].as_str()).collect();
                    format!("({})->{}", args.join(","), self.carriers[sym.result][v])
                })
                .collect();
            parts.push(format!("{}:[{}]", sym.name, entries.join(" ")));
        }
        for (r, sym) in self.sig.relations.iter().enumerate() {
            let entries: Vec<String> = self
                .rel_tuples(r)
                .map(|t| {
                    let args: Vec<&str> =
                        t.iter().zip(&sym.args).map(|(&a, &s)| self.carriers[s][a].as_str()).collect();
                    format!("({})", args.join(","))
                })
                .collect();
            parts.push(format!("{}:[{}]", sym.name, entries.join(" ")));
        }
        parts.join(" ")
    }
}
