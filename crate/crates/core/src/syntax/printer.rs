//! Pretty-printing back into the `.phl` surface syntax. The output parses to
//! the same AST it was printed from.

use std::fmt::{self, Write};

use super::{Document, Formula, HornSequent, Item, RelativeTheory, Signature, Term, Theory, TheoryMorphism, Variable};

pub fn term_to_string(sig: &Signature, ctx: &[Variable], t: &Term) -> String {
    let mut s = String::new();
    write_term(&mut s, sig, ctx, t).expect("writing to a String cannot fail");
    s
}

pub fn formula_to_string(sig: &Signature, ctx: &[Variable], phi: &Formula) -> String {
    let mut s = String::new();
    write_formula(&mut s, sig, ctx, phi).expect("writing to a String cannot fail");
    s
}

/// `[x:s, …] premise |- conclusion` without the trailing `;`.
pub fn sequent_to_string(sig: &Signature, seq: &HornSequent) -> String {
    let mut s = String::new();
    write_sequent(&mut s, sig, seq).expect("writing to a String cannot fail");
    s
}

fn shadowed(ctx: &[Variable], name: &str) -> bool {
    ctx.iter().any(|v| v.name == name)
}

fn write_term(w: &mut impl Write, sig: &Signature, ctx: &[Variable], t: &Term) -> fmt::Result {
    match t {
        Term::Var(i) => match ctx.get(*i) {
            Some(v) => w.write_str(&v.name),
            None => write!(w, "?{i}"),
        },
        Term::App(f, args) => {
            let name = &sig.functions[*f].name;
            w.write_str(name)?;
            if args.is_empty() && !shadowed(ctx, name) {
                return Ok(());
            }
            w.write_char('(')?;
            for (i, a) in args.iter().enumerate() {
                if i > 0 {
                    w.write_str(", ")?;
                }
                write_term(w, sig, ctx, a)?;
            }
            w.write_char(')')
        }
    }
}

fn write_formula(w: &mut impl Write, sig: &Signature, ctx: &[Variable], phi: &Formula) -> fmt::Result {
    match phi {
        Formula::Top => w.write_str("top"),
        Formula::Rel(r, args) => {
            let name = &sig.relations[*r].name;
            w.write_str(name)?;
            if args.is_empty() && !shadowed(ctx, name) {
                return Ok(());
            }
            w.write_char('(')?;
            for (i, a) in args.iter().enumerate() {
                if i > 0 {
                    w.write_str(", ")?;
                }
                write_term(w, sig, ctx, a)?;
            }
            w.write_char(')')
        }
        Formula::Eq(a, b) if a == b => {
            w.write_str("def(")?;
            write_term(w, sig, ctx, a)?;
            w.write_char(')')
        }
        Formula::Eq(a, b) => {
            write_term(w, sig, ctx, a)?;
            w.write_str(" = ")?;
            write_term(w, sig, ctx, b)
        }
        Formula::And(a, b) => {
            write_formula(w, sig, ctx, a)?;
            w.write_str(" & ")?;
            if matches!(**b, Formula::And(..)) {
                w.write_char('(')?;
                write_formula(w, sig, ctx, b)?;
                w.write_char(')')
            } else {
                write_formula(w, sig, ctx, b)
            }
        }
    }
}

fn write_context(w: &mut impl Write, sig: &Signature, ctx: &[Variable]) -> fmt::Result {
    w.write_char('[')?;
    for (i, v) in ctx.iter().enumerate() {
        if i > 0 {
            w.write_str(", ")?;
        }
        write!(w, "{}:{}", v.name, sig.sorts[v.sort])?;
    }
    w.write_char(']')
}

fn write_sequent(w: &mut impl Write, sig: &Signature, seq: &HornSequent) -> fmt::Result {
    write_context(w, sig, &seq.context)?;
    w.write_char(' ')?;
    write_formula(w, sig, &seq.context, &seq.premise)?;
    w.write_str(" |- ")?;
    write_formula(w, sig, &seq.context, &seq.conclusion)
}

fn write_sort_list(w: &mut impl Write, sig: &Signature, sorts: &[usize]) -> fmt::Result {
    for (i, &s) in sorts.iter().enumerate() {
        if i > 0 {
            w.write_str(" * ")?;
        }
        w.write_str(&sig.sorts[s])?;
    }
    Ok(())
}

fn write_symbols(f: &mut fmt::Formatter<'_>, sig: &Signature) -> fmt::Result {
    if !sig.functions.is_empty() {
        f.write_str("  functions\n")?;
        for (i, sym) in sig.functions.iter().enumerate() {
            write!(f, "    {} : ", sym.name)?;
            if !sym.args.is_empty() {
                write_sort_list(f, sig, &sym.args)?;
                f.write_char(' ')?;
            }
            write!(f, "-> {}", sig.sorts[sym.result])?;
            f.write_str(if i + 1 == sig.functions.len() { ";\n" } else { ",\n" })?;
        }
    }
    if !sig.relations.is_empty() {
        f.write_str("  relations\n")?;
        for (i, sym) in sig.relations.iter().enumerate() {
            write!(f, "    {}", sym.name)?;
            if !sym.args.is_empty() {
                f.write_str(" : ")?;
                write_sort_list(f, sig, &sym.args)?;
            }
            f.write_str(if i + 1 == sig.relations.len() { ";\n" } else { ",\n" })?;
        }
    }
    Ok(())
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sig = self.sig();
        writeln!(f, "theory {} {{", self.name)?;
        if !sig.sorts.is_empty() {
            writeln!(f, "  sorts {};", sig.sorts.join(", "))?;
        }
        write_symbols(f, sig)?;
        if !self.flags.is_empty() {
            let flags: Vec<_> = self.flags.iter().map(|fl| fl.keyword()).collect();
            writeln!(f, "  flags {};", flags.join(", "))?;
        }
        if !self.axioms.is_empty() {
            f.write_str("  axioms\n")?;
            for ax in &self.axioms {
                f.write_str("    ")?;
                write_sequent(f, sig, ax)?;
                f.write_str(";\n")?;
            }
        }
        f.write_str("}\n")
    }
}

impl fmt::Display for TheoryMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (ss, ts) = (self.source.sig(), self.target.sig());
        writeln!(f, "morphism {} : {} -> {} {{", self.name, self.source.name, self.target.name)?;
        let sections: [(&str, Vec<(&str, &str)>); 3] = [
            (
                "sorts",
                self.sort_map.iter().enumerate().map(|(a, &b)| (ss.sorts[a].as_str(), ts.sorts[b].as_str())).collect(),
            ),
            (
                "functions",
                self.func_map
                    .iter()
                    .enumerate()
                    .map(|(a, &b)| (ss.functions[a].name.as_str(), ts.functions[b].name.as_str()))
                    .collect(),
            ),
            (
                "relations",
                self.rel_map
                    .iter()
                    .enumerate()
                    .map(|(a, &b)| (ss.relations[a].name.as_str(), ts.relations[b].name.as_str()))
                    .collect(),
            ),
        ];
        for (kw, pairs) in sections {
            if pairs.is_empty() {
                continue;
            }
            let body: Vec<String> = pairs.iter().map(|(a, b)| format!("{a} -> {b}")).collect();
            writeln!(f, "  {kw} {};", body.join(", "))?;
        }
        f.write_str("}\n")
    }
}

impl fmt::Display for RelativeTheory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let base = self.base.sig();
        writeln!(f, "relative {} over {} {{", self.name, self.base.name)?;
        if !self.operations.is_empty() {
            f.write_str("  operations\n")?;
            for (i, op) in self.operations.iter().enumerate() {
                write!(f, "    {} : ", op.name)?;
                write_context(f, base, &op.arity.context)?;
                f.write_char(' ')?;
                write_formula(f, base, &op.arity.context, &op.arity.formula)?;
                write!(f, " -> {}", base.sorts[op.result])?;
                f.write_str(if i + 1 == self.operations.len() { ";\n" } else { ",\n" })?;
            }
        }
        if !self.judgments.is_empty() {
            let sig = self.combined_signature();
            f.write_str("  judgments\n")?;
            for j in &self.judgments {
                f.write_str("    ")?;
                write_sequent(f, &sig, j)?;
                f.write_str(";\n")?;
            }
        }
        f.write_str("}\n")
    }
}

impl fmt::Display for Document {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, item) in self.items.iter().enumerate() {
            if i > 0 {
                f.write_char('\n')?;
            }
            match item {
                Item::Theory(t) => write!(f, "{t}")?,
                Item::Morphism(m) => write!(f, "{m}")?,
                Item::Relative(r) => write!(f, "{r}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use crate::syntax::{parse_document, parse_theory};

    #[test]
    fn print_parse_roundtrip_on_tricky_names() {
        let src = "theory T {
  sorts *, b;
  functions e : -> *, f : * * b -> *;
  relations P, leq : * * *;
  flags disjoint_union;
  axioms
    [e:*, y:b] P & def(f(e, y)) |- f(e(), y) = e & (leq(e, e) & top);
    [P:*] P() |- top;
}";
        let t = parse_theory(src).unwrap();
        let printed = t.to_string();
        let t2 = parse_theory(&printed).unwrap();
        assert_eq!(t, t2);
        assert_eq!(printed, t2.to_string());
    }

    #[test]
    fn documents_roundtrip() {
        let src = format!(
            "{}\n{}\nmorphism m : pos -> pos {{ }}\n",
            include_str!("../../corpus/pos.phl"),
            include_str!("../../corpus/udos.phl")
        );
        let doc = parse_document(&src).unwrap();
        let printed = doc.to_string();
        let doc2 = parse_document(&printed).unwrap();
        assert_eq!(doc, doc2);
        assert_eq!(printed, doc2.to_string());
    }
}
