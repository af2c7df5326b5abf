//! A small text language for categories, functors, diagrams and natural
//! transformations.
//!
//! ```text
//! category Z2 presented
//!   objects: *
//!   generators: g : * -> *
//!   relations: g.g = id
//! ```
//!
//! Composition is written right to left: `g.f` is `g ∘ f`. Names are runs of
//! non-space characters other than `: . = ~ # "` (and never contain `->`),
//! or double-quoted strings. `#` starts a line comment.

mod elaborate;
mod lexer;
mod parser;
mod printer;
mod saturate;

use std::fmt;

use thiserror::Error;

use crate::report::LawReport;

pub use elaborate::{elaborate, elaborate_table, eval_word, Elaborated, NamedFunctor};
pub use parser::parse;
pub use printer::{print_category, print_document, quote_name};
pub use saturate::{saturate, SaturationConfig};

/// Source position, 1-based. Positions never take part in equality, so
/// that a reparsed document equals the original.
#[derive(Clone, Copy, Debug, Default)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl PartialEq for Pos {
    fn eq(&self, _: &Pos) -> bool {
        true
    }
}

impl Eq for Pos {}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Name {
    pub text: String,
    pub pos: Pos,
}

impl Name {
    pub fn new(text: impl Into<String>) -> Self {
        Name {
            text: text.into(),
            pos: Pos::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrowDecl {
    pub name: Name,
    pub source: Name,
    pub target: Name,
}

/// `g.f = h`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComposeEntry {
    pub g: Name,
    pub f: Name,
    pub h: Name,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableBody {
    pub objects: Vec<Name>,
    pub arrows: Vec<ArrowDecl>,
    /// `id x: f`
    pub identities: Vec<(Name, Name)>,
    pub compose: Vec<ComposeEntry>,
    pub equiv: Vec<(Name, Name)>,
}

/// A composite in written order: `h.g.f` is `[h, g, f]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Word {
    /// The identity at an object inferred from context.
    Id(Pos),
    Path(Vec<Name>),
}

impl Word {
    pub fn pos(&self) -> Pos {
        match self {
            Word::Id(p) => *p,
            Word::Path(names) => names.first().map(|n| n.pos).unwrap_or_default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub lhs: Word,
    pub rhs: Word,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentedBody {
    pub objects: Vec<Name>,
    pub generators: Vec<ArrowDecl>,
    pub relations: Vec<Relation>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CategoryBody {
    Table(TableBody),
    Presented(PresentedBody),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CategoryDecl {
    pub name: Name,
    pub body: CategoryBody,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FunctorKind {
    Functor,
    Diagram,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctorDecl {
    pub kind: FunctorKind,
    pub name: Name,
    pub source: Name,
    pub target: Name,
    pub objs: Vec<(Name, Name)>,
    pub arrs: Vec<(Name, Word)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NatDecl {
    pub name: Name,
    /// Functor names in written order: `G.F` is `G ∘ F`.
    pub source: Vec<Name>,
    pub target: Vec<Name>,
    pub components: Vec<(Name, Word)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Item {
    Category(CategoryDecl),
    Functor(FunctorDecl),
    Nat(NatDecl),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Document {
    pub items: Vec<Item>,
}

impl Document {
    pub fn category(&self, name: &str) -> Option<&CategoryDecl> {
        self.items.iter().find_map(|i| match i {
            Item::Category(c) if c.name.text == name => Some(c),
            _ => None,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DslError {
    #[error("{pos}: {message}")]
    Lex { pos: Pos, message: String },

    #[error("{pos}: unexpected {found}, expected one of: {}", expected.join(", "))]
    Syntax {
        pos: Pos,
        found: String,
        expected: Vec<String>,
    },

    #[error("{pos}: undeclared {kind} `{name}`")]
    Reference {
        pos: Pos,
        kind: String,
        name: String,
    },

    #[error("{pos}: {message}")]
    Declaration { pos: Pos, message: String },

    #[error("{pos}: {message}")]
    Typing { pos: Pos, message: String },

    #[error("saturation exceeded: {0}")]
    SaturationExceeded(String),

    #[error("`{name}` fails its laws:\n{report}")]
    Law { name: String, report: LawReport },

    #[error(transparent)]
    Core(#[from] crate::error::Error),
}

impl DslError {
    /// Law failures are the only errors about well-formed input.
    pub fn is_law_failure(&self) -> bool {
        matches!(self, DslError::Law { .. })
    }
}

pub type DslResult<T> = std::result::Result<T, DslError>;

/// Reserved words; a name spelled like one must be quoted.
pub const KEYWORDS: &[&str] = &[
    "category",
    "table",
    "presented",
    "objects",
    "arrows",
    "id",
    "compose",
    "equiv",
    "generators",
    "relations",
    "functor",
    "diagram",
    "nat",
    "obj",
    "arr",
    "at",
];
