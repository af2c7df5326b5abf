use std::fmt::Write;

use super::lexer::is_bare_char;
use super::{ArrowDecl, CategoryBody, Document, FunctorKind, Item, Name, Word, KEYWORDS};
use crate::category::FinCategory;

/// Quotes `name` unless it lexes back as a single bare name.
pub fn quote_name(name: &str) -> String {
    let bare = !name.is_empty()
        && name.chars().all(is_bare_char)
        && !name.contains("->")
        && !KEYWORDS.contains(&name);
    if bare {
        name.to_string()
    } else {
        let escaped = name.replace('\\', "\\\\").replace('"', "\\\"");
        format!("\"{escaped}\"")
    }
}

fn q(n: &Name) -> String {
    quote_name(&n.text)
}

fn word(w: &Word) -> String {
    match w {
        Word::Id(_) => "id".into(),
        Word::Path(names) => names.iter().map(q).collect::<Vec<_>>().join("."),
    }
}

fn names(ns: &[Name]) -> String {
    ns.iter().map(q).collect::<Vec<_>>().join(" ")
}

fn arrow_lines(out: &mut String, decls: &[ArrowDecl]) {
    for a in decls {
        let _ = writeln!(
            out,
            "    {} : {} -> {}",
            q(&a.name),
            q(&a.source),
            q(&a.target)
        );
    }
}

/// Canonical text for a document. Parsing the output gives back an equal
/// document.
pub fn print_document(doc: &Document) -> String {
    let mut out = String::new();
    for (i, item) in doc.items.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        match item {
            Item::Category(c) => match &c.body {
                CategoryBody::Table(t) => {
                    let _ = writeln!(out, "category {} table", q(&c.name));
                    let _ = writeln!(out, "  objects: {}", names(&t.objects));
                    out.push_str("  arrows:\n");
                    arrow_lines(&mut out, &t.arrows);
                    for (x, f) in &t.identities {
                        let _ = writeln!(out, "  id {}: {}", q(x), q(f));
                    }
                    out.push_str("  compose:\n");
                    for e in &t.compose {
                        let _ = writeln!(out, "    {}.{} = {}", q(&e.g), q(&e.f), q(&e.h));
                    }
                    if !t.equiv.is_empty() {
                        out.push_str("  equiv:\n");
                        for (a, b) in &t.equiv {
                            let _ = writeln!(out, "    {} ~ {}", q(a), q(b));
                        }
                    }
                }
                CategoryBody::Presented(p) => {
                    let _ = writeln!(out, "category {} presented", q(&c.name));
                    let _ = writeln!(out, "  objects: {}", names(&p.objects));
                    out.push_str("  generators:\n");
                    arrow_lines(&mut out, &p.generators);
                    out.push_str("  relations:\n");
                    for r in &p.relations {
                        let _ = writeln!(out, "    {} = {}", word(&r.lhs), word(&r.rhs));
                    }
                }
            },
            Item::Functor(f) => {
                let kw = match f.kind {
                    FunctorKind::Functor => "functor",
                    FunctorKind::Diagram => "diagram",
                };
                let _ = writeln!(
                    out,
                    "{kw} {} : {} -> {}",
                    q(&f.name),
                    q(&f.source),
                    q(&f.target)
                );
                for (a, x) in &f.objs {
                    let _ = writeln!(out, "  obj {} -> {}", q(a), q(x));
                }
                for (a, w) in &f.arrs {
                    let _ = writeln!(out, "  arr {} -> {}", q(a), word(w));
                }
            }
            Item::Nat(t) => {
                let expr = |ns: &[Name]| ns.iter().map(q).collect::<Vec<_>>().join(".");
                let _ = writeln!(
                    out,
                    "nat {} : {} => {}",
                    q(&t.name),
                    expr(&t.source),
                    expr(&t.target)
                );
                for (x, w) in &t.components {
                    let _ = writeln!(out, "  at {}: {}", q(x), word(w));
                }
            }
        }
    }
    out
}

/// Table-mode text for `c`. Elaborating the output gives back a category
/// equal to `c`, provided `c` is a category with distinct labels.
///
/// Composites with an identity that take the default value are left out.
pub fn print_category(name: &str, c: &FinCategory) -> String {
    let mut out = String::new();
    let m = c.num_arrows();
    let _ = writeln!(out, "category {} table", quote_name(name));
    let objs: Vec<String> = c.objects().iter().map(|o| quote_name(o)).collect();
    let _ = writeln!(out, "  objects: {}", objs.join(" "));
    out.push_str("  arrows:\n");
    for a in c.arrows() {
        let _ = writeln!(
            out,
            "    {} : {} -> {}",
            quote_name(&a.label),
            quote_name(c.object_name(a.source)),
            quote_name(c.object_name(a.target))
        );
    }
    for x in 0..c.num_objects() {
        let _ = writeln!(
            out,
            "  id {}: {}",
            quote_name(c.object_name(x)),
            quote_name(c.label(c.identity(x)))
        );
    }
    out.push_str("  compose:\n");
    let designated = |f: usize| c.identities()[c.source(f)] == f;
    for g in 0..m {
        for f in 0..m {
            let Some(h) = c.composite(g, f) else { continue };
            let implied = if designated(f) {
                Some(g)
            } else if designated(g) {
                Some(f)
            } else {
                None
            };
            if implied == Some(h) {
                continue;
            }
            let _ = writeln!(
                out,
                "    {}.{} = {}",
                quote_name(c.label(g)),
                quote_name(c.label(f)),
                quote_name(c.label(h))
            );
        }
    }
    let extra: Vec<usize> = (0..m).filter(|&f| c.eq_class(f) != f).collect();
    if !extra.is_empty() {
        out.push_str("  equiv:\n");
        for f in extra {
            let _ = writeln!(
                out,
                "    {} ~ {}",
                quote_name(c.label(f)),
                quote_name(c.label(c.eq_class(f)))
            );
        }
    }
    out
}
