use std::sync::Arc;

use super::{Homomorphism, PartialStructure};
use crate::error::{Error, Result};
use crate::syntax::{Signature, Theory, TheoryFlag, TheoryMorphism};

/// Per-sort maps from one structure to another, indexed `[sort][element]`.
pub type SortMaps = Vec<Vec<usize>>;

/// One-point carriers, every function total, every relation full.
pub fn terminal(name: impl Into<String>, sig: Arc<Signature>) -> PartialStructure {
    let carriers = sig.sorts.iter().map(|_| vec!["()".to_string()]).collect();
    let mut m = PartialStructure::with_carriers(name, sig, carriers);
    m.funcs.iter_mut().for_each(|t| t.iter_mut().for_each(|v| *v = Some(0)));
    m.rels.iter_mut().for_each(|t| t.iter_mut().for_each(|v| *v = true));
    m
}

/// The cartesian product with its projections. Elements of sort `s` are
/// tuples indexed in mixed radix, first factor most significant. The empty
/// family gives the terminal structure.
pub fn product(
    name: impl Into<String>,
    sig: Arc<Signature>,
    family: &[&PartialStructure],
    max_carrier: usize,
) -> Result<(PartialStructure, Vec<SortMaps>)> {
    if family.iter().any(|m| *m.sig != *sig) {
        return Err(Error::SignatureMismatch("product factors must share the signature".into()));
    }
    let nsorts = sig.sorts.len();
    let mut sizes = vec![1usize; nsorts];
    for m in family {
        for (s, size) in sizes.iter_mut().enumerate() {
            *size = size.saturating_mul(m.size(s));
        }
    }
    if let Some(s) = (0..nsorts).find(|&s| sizes[s] > max_carrier) {
        return Err(Error::SizeBound(format!(
            "product carrier of sort `{}` has {} elements (bound {max_carrier})",
            sig.sorts[s], sizes[s]
        )));
    }
    // components[s][i] = the factor elements of product element i
    let components: Vec<Vec<Vec<usize>>> = (0..nsorts)
        .map(|s| {
            (0..sizes[s])
                .map(|mut i| {
                    let mut out = vec![0; family.len()];
                    for (c, m) in family.iter().enumerate().rev() {
                        out[c] = i % m.size(s);
                        i /= m.size(s);
                    }
                    out
                })
                .collect()
        })
        .collect();
    let compose = |s: usize, parts: &[usize]| -> usize {
        parts.iter().zip(family).fold(0, |acc, (&p, m)| acc * m.size(s) + p)
    };
    let carriers = (0..nsorts)
        .map(|s| {
            components[s]
                .iter()
                .map(|parts| {
                    let ls: Vec<&str> = parts.iter().zip(family).map(|(&p, m)| m.carriers[s][p].as_str()).collect();
                    format!("({})", ls.join(","))
                })
                .collect()
        })
        .collect();
    let mut out = PartialStructure::with_carriers(name, sig.clone(), carriers);
    for (f, sym) in sig.functions.iter().enumerate() {
        'entries: for i in 0..out.funcs[f].len() {
            let tuple = out.decode_tuple(&sym.args, i);
            let mut value = Vec::with_capacity(family.len());
            for (c, m) in family.iter().enumerate() {
                let arg: Vec<usize> = tuple.iter().zip(&sym.args).map(|(&a, &s)| components[s][a][c]).collect();
                match m.func(f, &arg) {
                    Some(v) => value.push(v),
                    None => continue 'entries,
                }
            }
            out.funcs[f][i] = Some(compose(sym.result, &value));
        }
    }
    for (r, sym) in sig.relations.iter().enumerate() {
        for i in 0..out.rels[r].len() {
            let tuple = out.decode_tuple(&sym.args, i);
            out.rels[r][i] = family.iter().enumerate().all(|(c, m)| {
                let arg: Vec<usize> = tuple.iter().zip(&sym.args).map(|(&a, &s)| components[s][a][c]).collect();
                m.rel(r, &arg)
            });
        }
    }
    let projections = (0..family.len())
        .map(|c| (0..nsorts).map(|s| components[s].iter().map(|parts| parts[c]).collect()).collect())
        .collect();
    Ok((out, projections))
}

/// The substructure on the kept elements: an entry survives when its
/// arguments and value are kept; relations are restricted. Returns the
/// structure and its inclusion maps.
pub fn induced_substructure(m: &PartialStructure, keep: &[Vec<bool>]) -> (PartialStructure, SortMaps) {
    let inclusion: SortMaps = keep.iter().map(|k| (0..k.len()).filter(|&a| k[a]).collect()).collect();
    let mut position: Vec<Vec<Option<usize>>> = keep.iter().map(|k| vec![None; k.len()]).collect();
    for (s, inc) in inclusion.iter().enumerate() {
        for (i, &a) in inc.iter().enumerate() {
            position[s][a] = Some(i);
        }
    }
    let carriers = inclusion.iter().enumerate().map(|(s, inc)| inc.iter().map(|&a| m.carriers[s][a].clone()).collect()).collect();
    let mut out = PartialStructure::with_carriers(m.signature_name.clone(), m.sig.clone(), carriers);
    for (f, sym) in m.sig.functions.iter().enumerate() {
        for i in 0..out.funcs[f].len() {
            let tuple = out.decode_tuple(&sym.args, i);
            let orig: Vec<usize> = tuple.iter().zip(&sym.args).map(|(&a, &s)| inclusion[s][a]).collect();
            out.funcs[f][i] = m.func(f, &orig).and_then(|v| position[sym.result][v]);
        }
    }
    for (r, sym) in m.sig.relations.iter().enumerate() {
        for i in 0..out.rels[r].len() {
            let tuple = out.decode_tuple(&sym.args, i);
            let orig: Vec<usize> = tuple.iter().zip(&sym.args).map(|(&a, &s)| inclusion[s][a]).collect();
            out.rels[r][i] = m.rel(r, &orig);
        }
    }
    (out, inclusion)
}

/// Pullback of a cospan `A -f-> C <-g- B` as the substructure of `A × B` on
/// the pairs with equal images, with its two projections.
pub fn pullback(f: &Homomorphism, g: &Homomorphism) -> Result<(PartialStructure, SortMaps, SortMaps)> {
    if *f.target != *g.target {
        return Err(Error::SignatureMismatch("pullback needs a common codomain".into()));
    }
    let (a, b) = (&*f.source, &*g.source);
    let bound = a.sizes().iter().zip(b.sizes()).map(|(x, y)| x * y).max().unwrap_or(0);
    let (prod, proj) = product(a.signature_name.clone(), a.sig.clone(), &[a, b], bound.max(1))?;
    let keep: Vec<Vec<bool>> = (0..prod.carriers.len())
        .map(|s| (0..prod.size(s)).map(|i| f.maps[s][proj[0][s][i]] == g.maps[s][proj[1][s][i]]).collect())
        .collect();
    let (sub, inc) = induced_substructure(&prod, &keep);
    let left = inc.iter().enumerate().map(|(s, m)| m.iter().map(|&i| proj[0][s][i]).collect()).collect();
    let right = inc.iter().enumerate().map(|(s, m)| m.iter().map(|&i| proj[1][s][i]).collect()).collect();
    Ok((sub, left, right))
}

/// The source-theory structure read off a target-theory structure along `rho`.
pub fn reduct(rho: &TheoryMorphism, n: &PartialStructure) -> Result<PartialStructure> {
    if *n.sig != *rho.target.signature {
        return Err(Error::SignatureMismatch(format!("structure is not over `{}`", rho.target.name)));
    }
    // Arities agree up to the sort map, so the dense tables carry over as-is.
    Ok(PartialStructure {
        signature_name: rho.source.name.clone(),
        sig: rho.source.signature.clone(),
        carriers: rho.sort_map.iter().map(|&s| n.carriers[s].clone()).collect(),
        funcs: rho.func_map.iter().map(|&g| n.funcs[g].clone()).collect(),
        rels: rho.rel_map.iter().map(|&q| n.rels[q].clone()).collect(),
    })
}

/// Maps of a target homomorphism seen on the reducts.
pub fn reduct_maps(rho: &TheoryMorphism, maps: &[Vec<usize>]) -> SortMaps {
    rho.sort_map.iter().map(|&s| maps[s].clone()).collect()
}

/// Sort-wise disjoint union with its two coprojections. Only for theories
/// flagged `disjoint_union`, where this is the coproduct of models.
pub fn disjoint_union(theory: &Theory, m: &PartialStructure, n: &PartialStructure) -> Result<(PartialStructure, SortMaps, SortMaps)> {
    if !theory.has_flag(TheoryFlag::DisjointUnion) {
        return Err(Error::MissingFlag { theory: theory.name.clone(), flag: TheoryFlag::DisjointUnion.keyword().into() });
    }
    if *m.sig != *theory.signature || *n.sig != *theory.signature {
        return Err(Error::SignatureMismatch(format!("structures are not over `{}`", theory.name)));
    }
    let carriers: Vec<Vec<String>> = m
        .carriers
        .iter()
        .zip(&n.carriers)
        .map(|(l, r)| {
            if l.iter().any(|x| r.contains(x)) {
                l.iter().map(|x| format!("0.{x}")).chain(r.iter().map(|x| format!("1.{x}"))).collect()
            } else {
                l.iter().chain(r).cloned().collect()
            }
        })
        .collect();
    let inl: SortMaps = m.carriers.iter().map(|c| (0..c.len()).collect()).collect();
    let inr: SortMaps = m.carriers.iter().zip(&n.carriers).map(|(l, r)| (l.len()..l.len() + r.len()).collect()).collect();
    let mut out = PartialStructure::with_carriers(m.signature_name.clone(), m.sig.clone(), carriers);
    for (part, maps) in [(m, &inl), (n, &inr)] {
        for (f, sym) in m.sig.functions.iter().enumerate() {
            for (tuple, v) in part.func_entries(f) {
                let t: Vec<usize> = tuple.iter().zip(&sym.args).map(|(&a, &s)| maps[s][a]).collect();
                out.set_func(f, &t, Some(maps[sym.result][v]));
            }
        }
        for (r, sym) in m.sig.relations.iter().enumerate() {
            for tuple in part.rel_tuples(r) {
                let t: Vec<usize> = tuple.iter().zip(&sym.args).map(|(&a, &s)| maps[s][a]).collect();
                out.set_rel(r, &t, true);
            }
        }
    }
    Ok((out, inl, inr))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{structures, theories};
    use crate::semantics::{is_closed_mono, is_homomorphism, is_model};

    #[test]
    fn empty_product_is_terminal() {
        let pos = theories::pos();
        let (one, proj) = product("pos", pos.signature.clone(), &[], 10).unwrap();
        assert_eq!(one.sizes(), vec![1]);
        assert!(one.rel(0, &[0, 0]));
        assert!(proj.is_empty());
        assert_eq!(one, terminal("pos", pos.signature.clone()));
    }

    #[test]
    fn square_of_the_two_chain() {
        let c2 = structures::chain(2);
        let (sq, proj) = product("pos", c2.sig.clone(), &[&c2, &c2], 10).unwrap();
        assert_eq!(sq.sizes(), vec![4]);
        assert_eq!(sq.rels[0].iter().filter(|&&b| b).count(), 9);
        assert!(is_model(&sq, &theories::pos()).unwrap());
        for p in &proj {
            assert!(is_homomorphism(p, &sq, &c2));
        }
        assert!(product("pos", c2.sig.clone(), &[&c2, &c2], 3).is_err());
    }

    #[test]
    fn product_definedness_is_componentwise() {
        let a1 = structures::remark_stage(2, 1);
        let a2 = structures::remark_stage(2, 2);
        let (p, _) = product("r", a1.sig.clone(), &[&a1, &a2], 10).unwrap();
        let a = a1.element(0, "a").unwrap();
        let aa = a * 2 + a2.element(0, "a").unwrap();
        let u1 = p.sig.function_id("u_1").unwrap();
        let u0 = p.sig.function_id("u_0").unwrap();
        assert_eq!(p.func(u1, &[aa]), None);
        assert!(p.func(u0, &[aa]).is_some());
    }

    #[test]
    fn pullbacks_of_sets() {
        let set = theories::set();
        let one = Arc::new(structures::bare_set(&set, 1));
        let two = Arc::new(structures::bare_set(&set, 2));
        let p = Homomorphism::new(two.clone(), one.clone(), vec![vec![0, 0]]).unwrap();
        let (pb, _, _) = pullback(&p, &p).unwrap();
        assert_eq!(pb.sizes(), vec![4]);
        let (sum, inl, inr) = disjoint_union(&set, &one, &one).unwrap();
        let sum = Arc::new(sum);
        let l = Homomorphism::new(one.clone(), sum.clone(), inl).unwrap();
        let r = Homomorphism::new(one.clone(), sum, inr).unwrap();
        let (pb, _, _) = pullback(&l, &r).unwrap();
        assert_eq!(pb.sizes(), vec![0]);
        let c2 = Arc::new(structures::chain(2));
        let id = Homomorphism::identity(c2.clone());
        let (pb, _, _) = pullback(&id, &id).unwrap();
        assert_eq!(pb.sizes(), vec![2]);
        assert_eq!(pb.rels, c2.rels);
    }

    #[test]
    fn disjoint_union_needs_the_flag_and_gives_closed_coprojections() {
        let lat = theories::bounded_lattice();
        let m2 = structures::diamond(2);
        assert!(matches!(disjoint_union(&lat, &m2, &m2), Err(Error::MissingFlag { .. })));
        let c2 = structures::chain(2);
        let (two, _, _) = disjoint_union(&theories::pos(), &c2, &c2).unwrap();
        assert_eq!(two.sizes(), vec![4]);
        assert_eq!(two.rels[0].iter().filter(|&&b| b).count(), 6);
        let end = theories::end();
        let (a2, inl, _) = disjoint_union(&end, &structures::cycle(2), &structures::cycle(3)).unwrap();
        assert_eq!(a2.sizes(), vec![5]);
        let h = Homomorphism::new(Arc::new(structures::cycle(2)), Arc::new(a2), inl).unwrap();
        assert!(is_closed_mono(&h).unwrap());
    }

    #[test]
    fn reduct_along_the_symbol_erasure() {
        let rho = crate::corpus::morphisms::set_to_pos();
        let c2 = structures::chain(2);
        let r = reduct(&rho, &c2).unwrap();
        assert_eq!(r.sizes(), vec![2]);
        assert!(r.rels.is_empty() && r.funcs.is_empty());
        let id = TheoryMorphism::identity(theories::pos());
        assert_eq!(reduct(&id, &c2).unwrap(), c2);
    }
}
