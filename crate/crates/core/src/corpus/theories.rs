//! Corpus theories. Fixed theories are parsed once from the bundled `.phl`
//! files; infinite-signature families are finite truncations generated on
//! demand.

use std::fmt::Write;
use std::sync::{Arc, OnceLock};

use crate::sigma::FiniteGroup;
use crate::syntax::{parse_document_with, parse_theory, Document, RelativeTheory, Theory};

macro_rules! bundled {
    ($($fn_name:ident => $file:literal),* $(,)?) => {
        $(
            pub fn $fn_name() -> Arc<Theory> {
                static CELL: OnceLock<Arc<Theory>> = OnceLock::new();
                CELL.get_or_init(|| {
                    Arc::new(parse_theory(include_str!(concat!("../../corpus/", $file))).expect($file))
                })
                .clone()
            }
        )*

        /// `(name, source)` of every bundled theory file.
        pub const SOURCES: &[(&str, &str)] = &[
            $((stringify!($fn_name), include_str!(concat!("../../corpus/", $file)))),*
        ];

        fn bundled_by_name(name: &str) -> Option<Arc<Theory>> {
            match name {
                $(stringify!($fn_name) => Some($fn_name()),)*
                _ => None,
            }
        }
    };
}

bundled! {
    ab => "ab.phl",
    arrow => "arrow.phl",
    aut => "aut.phl",
    bounded_lattice => "bounded_lattice.phl",
    bowtie => "bowtie.phl",
    brel => "brel.phl",
    cospan => "cospan.phl",
    end => "end.phl",
    erel => "erel.phl",
    grp => "grp.phl",
    idem => "idem.phl",
    lat => "lat.phl",
    mon => "mon.phl",
    per => "per.phl",
    pointed => "pointed.phl",
    pos => "pos.phl",
    preord => "preord.phl",
    quiv => "quiv.phl",
    rquiv => "rquiv.phl",
    rsrel => "rsrel.phl",
    semigroup => "semigroup.phl",
    set => "set.phl",
    set2 => "set2.phl",
    slat => "slat.phl",
    slat0 => "slat0.phl",
    urel => "urel.phl",
}

pub const UDOS_SOURCE: &str = include_str!("../../corpus/udos.phl");
pub const MORPHISMS_SOURCE: &str = include_str!("../../corpus/morphisms.phl");

/// Bundled theories, the semiring relative theory and the corpus morphisms.
pub fn document() -> &'static Document {
    static CELL: OnceLock<Document> = OnceLock::new();
    CELL.get_or_init(|| {
        let env: Vec<Arc<Theory>> = SOURCES.iter().map(|(n, _)| bundled_by_name(n).expect("bundled")).collect();
        let src = format!("{UDOS_SOURCE}\n{MORPHISMS_SOURCE}");
        parse_document_with(&src, &env).expect("corpus morphisms parse")
    })
}

pub fn udos_relative() -> &'static RelativeTheory {
    document().relative("udos").expect("udos is bundled")
}

pub fn udos() -> Arc<Theory> {
    static CELL: OnceLock<Arc<Theory>> = OnceLock::new();
    CELL.get_or_init(|| Arc::new(udos_relative().compile().expect("udos compiles"))).clone()
}

fn generated(src: String) -> Arc<Theory> {
    Arc::new(parse_theory(&src).unwrap_or_else(|e| panic!("generated theory does not parse: {e}\n{src}")))
}

/// Sets with `n ≥ 1` total constants `c_0, …, c_{n-1}`.
pub fn n_const(n: usize) -> Arc<Theory> {
    assert!(n >= 1, "n_const needs at least one constant");
    constants_theory(&format!("n_const_{n}"), n)
}

/// Truncation to `c_0, …, c_{k-1}` of sets with countably many constants.
pub fn remark_constants(k: usize) -> Arc<Theory> {
    assert!(k >= 1, "remark_constants needs at least one constant");
    constants_theory(&format!("remark_constants_{k}"), k)
}

fn constants_theory(name: &str, n: usize) -> Arc<Theory> {
    let consts: Vec<String> = (0..n).map(|i| format!("c_{i} : -> *")).collect();
    let mut src = format!("theory {name} {{\n  sorts *;\n  functions {};\n  flags exact_constants;\n  axioms\n", consts.join(", "));
    for i in 0..n {
        writeln!(src, "    [] top |- def(c_{i});").unwrap();
    }
    src.push_str("}\n");
    generated(src)
}

/// A constant `e` and partial unary maps `u_0, …, u_k` fixing it.
pub fn remark_locret(k: usize) -> Arc<Theory> {
    let us: Vec<String> = (0..=k).map(|i| format!("u_{i} : * -> *")).collect();
    let mut src = format!("theory remark_locret_{k} {{\n  sorts *;\n  functions e : -> *, {};\n  axioms\n", us.join(", "));
    for i in 0..=k {
        writeln!(src, "    [] top |- u_{i}(e) = e;").unwrap();
    }
    src.push_str("}\n");
    generated(src)
}

/// Presheaves on the chain `0 → 1 → ⋯ → k`, contravariant: total maps
/// `r_i : s_{i+1} -> s_i`.
pub fn presheaf_omega_op(k: usize) -> Arc<Theory> {
    chain_presheaf(&format!("presheaf_omega_op_{k}"), k, true)
}

/// Covariant functors on the chain `0 → 1 → ⋯ → k`: total maps
/// `t_i : s_i -> s_{i+1}`.
pub fn presheaf_omega(k: usize) -> Arc<Theory> {
    chain_presheaf(&format!("presheaf_omega_{k}"), k, false)
}

fn chain_presheaf(name: &str, k: usize, contravariant: bool) -> Arc<Theory> {
    let sorts: Vec<String> = (0..=k).map(|i| format!("s_{i}")).collect();
    let mut src = format!("theory {name} {{\n  sorts {};\n", sorts.join(", "));
    if k > 0 {
        let maps: Vec<String> = (0..k)
            .map(|i| match contravariant {
                true => format!("r_{i} : s_{} -> s_{i}", i + 1),
                false => format!("t_{i} : s_{i} -> s_{}", i + 1),
            })
            .collect();
        writeln!(src, "  functions {};", maps.join(", ")).unwrap();
    }
    src.push_str("  flags disjoint_union;\n");
    if k > 0 {
        src.push_str("  axioms\n");
        for i in 0..k {
            match contravariant {
                true => writeln!(src, "    [x:s_{}] top |- def(r_{i}(x));", i + 1),
                false => writeln!(src, "    [x:s_{i}] top |- def(t_{i}(x));"),
            }
            .unwrap();
        }
    }
    src.push_str("}\n");
    generated(src)
}

/// Left `G`-sets: one total unary map `g_i` per group element, acting by
/// `g_i(g_j(x)) = g_{ij}(x)` with the identity acting trivially.
pub fn gset(g: &FiniteGroup) -> Arc<Theory> {
    let n = g.order();
    let maps: Vec<String> = (0..n).map(|i| format!("g_{i} : * -> *")).collect();
    let mut src = format!("theory gset_{} {{\n  sorts *;\n  functions {};\n  flags disjoint_union;\n  axioms\n", g.name, maps.join(", "));
    for i in 0..n {
        writeln!(src, "    [x:*] top |- def(g_{i}(x));").unwrap();
    }
    writeln!(src, "    [x:*] top |- g_{}(x) = x;", g.identity()).unwrap();
    for i in 0..n {
        for j in 0..n {
            writeln!(src, "    [x:*] top |- g_{i}(g_{j}(x)) = g_{}(x);", g.mul(i, j)).unwrap();
        }
    }
    src.push_str("}\n");
    generated(src)
}

/// Resolves a corpus name. Hyphens and underscores are interchangeable;
/// generated families take their parameter in parentheses, as in
/// `n-const(3)`, `remark-locret(2)`, `presheaf-omega(3)` or `gset(S3)`.
pub fn by_name(name: &str) -> Option<Arc<Theory>> {
    let norm = name.trim().replace('-', "_");
    if let Some((head, rest)) = norm.split_once('(') {
        let arg = rest.strip_suffix(')')?.trim();
        return match head {
            "gset" => FiniteGroup::by_name(arg).map(|g| gset(&g)),
            _ => {
                let k: usize = arg.parse().ok()?;
                match head {
                    "n_const" if k >= 1 => Some(n_const(k)),
                    "remark_constants" if k >= 1 => Some(remark_constants(k)),
                    "remark_locret" => Some(remark_locret(k)),
                    "presheaf_omega_op" => Some(presheaf_omega_op(k)),
                    "presheaf_omega" => Some(presheaf_omega(k)),
                    _ => None,
                }
            }
        };
    }
    if norm == "udos" {
        return Some(udos());
    }
    bundled_by_name(&norm).or_else(|| {
        // Generated theories are named `head_arg`, e.g. `n_const_3`.
        let (head, arg) = norm.rsplit_once('_')?;
        by_name(&format!("{head}({arg})"))
    })
}

/// Every fixed corpus theory, in name order.
pub fn bundled_all() -> Vec<Arc<Theory>> {
    let mut out: Vec<Arc<Theory>> = SOURCES.iter().filter_map(|(n, _)| bundled_by_name(n)).collect();
    out.push(udos());
    out.sort_by(|a, b| a.name.cmp(&b.name));
    out
}
