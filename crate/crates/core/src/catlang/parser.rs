use super::lexer::{lex, Tok, Token};
use super::{
    ArrowDecl, CategoryBody, CategoryDecl, ComposeEntry, Document, DslError, DslResult,
    FunctorDecl, FunctorKind, Item, Name, NatDecl, PresentedBody, Relation, TableBody, Word,
};

pub fn parse(text: &str) -> DslResult<Document> {
    let tokens = lex(text)?;
    let mut p = Parser { tokens, at: 0 };
    let mut items = Vec::new();
    loop {
        match p.peek() {
            Tok::Eof => break,
            Tok::Keyword("category") => items.push(Item::Category(p.category()?)),
            Tok::Keyword("functor") | Tok::Keyword("diagram") => {
                items.push(Item::Functor(p.functor()?))
            }
            Tok::Keyword("nat") => items.push(Item::Nat(p.nat()?)),
            _ => {
                return Err(p.unexpected(&[
                    "`category`",
                    "`functor`",
                    "`diagram`",
                    "`nat`",
                    "end of input",
                ]))
            }
        }
    }
    Ok(Document { items })
}

struct Parser {
    tokens: Vec<Token>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.tokens[self.at].tok
    }

    fn next(&mut self) -> Token {
        let t = self.tokens[self.at].clone();
        if self.at + 1 < self.tokens.len() {
            self.at += 1;
        }
        t
    }

    fn unexpected(&self, expected: &[&str]) -> DslError {
        let t = &self.tokens[self.at];
        DslError::Syntax {
            pos: t.pos,
            found: t.tok.describe(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn keyword(&mut self, kw: &'static str) -> DslResult<()> {
        if *self.peek() == Tok::Keyword(kw) {
            self.next();
            Ok(())
        } else {
            Err(self.unexpected(&[&format!("`{kw}`")]))
        }
    }

    fn punct(&mut self, tok: Tok) -> DslResult<()> {
        if *self.peek() == tok {
            self.next();
            Ok(())
        } else {
            Err(self.unexpected(&[&tok.describe()]))
        }
    }

    fn section(&mut self, kw: &'static str) -> DslResult<()> {
        self.keyword(kw)?;
        self.punct(Tok::Colon)
    }

    fn at_name(&self) -> bool {
        matches!(self.peek(), Tok::Name(_))
    }

    fn name(&mut self) -> DslResult<Name> {
        if let Tok::Name(text) = self.peek() {
            let text = text.clone();
            let pos = self.next().pos;
            Ok(Name { text, pos })
        } else {
            Err(self.unexpected(&["name"]))
        }
    }

    fn names(&mut self) -> DslResult<Vec<Name>> {
        let mut out = Vec::new();
        while self.at_name() {
            out.push(self.name()?);
        }
        Ok(out)
    }

    fn arrow_decls(&mut self) -> DslResult<Vec<ArrowDecl>> {
        let mut out = Vec::new();
        while self.at_name() {
            let name = self.name()?;
            self.punct(Tok::Colon)?;
            let source = self.name()?;
            self.punct(Tok::Arrow)?;
            let target = self.name()?;
            out.push(ArrowDecl {
                name,
                source,
                target,
            });
        }
        Ok(out)
    }

    fn dotted(&mut self) -> DslResult<Vec<Name>> {
        let mut out = vec![self.name()?];
        while *self.peek() == Tok::Dot {
            self.next();
            out.push(self.name()?);
        }
        Ok(out)
    }

    fn word(&mut self) -> DslResult<Word> {
        match self.peek() {
            Tok::Keyword("id") => Ok(Word::Id(self.next().pos)),
            Tok::Name(_) => Ok(Word::Path(self.dotted()?)),
            _ => Err(self.unexpected(&["name", "`id`"])),
        }
    }

    fn category(&mut self) -> DslResult<CategoryDecl> {
        self.keyword("category")?;
        let name = self.name()?;
        let body = match self.peek() {
            Tok::Keyword("table") => {
                self.next();
                CategoryBody::Table(self.table()?)
            }
            Tok::Keyword("presented") => {
                self.next();
                CategoryBody::Presented(self.presented()?)
            }
            _ => return Err(self.unexpected(&["`table`", "`presented`"])),
        };
        Ok(CategoryDecl { name, body })
    }

    fn table(&mut self) -> DslResult<TableBody> {
        self.section("objects")?;
        let objects = self.names()?;
        self.section("arrows")?;
        let arrows = self.arrow_decls()?;
        let mut identities = Vec::new();
        while *self.peek() == Tok::Keyword("id") {
            self.next();
            let x = self.name()?;
            self.punct(Tok::Colon)?;
            identities.push((x, self.name()?));
        }
        if *self.peek() != Tok::Keyword("compose") {
            return Err(self.unexpected(&["`id`", "`compose`"]));
        }
        self.section("compose")?;
        let mut compose = Vec::new();
        while self.at_name() {
            let g = self.name()?;
            self.punct(Tok::Dot)?;
            let f = self.name()?;
            self.punct(Tok::Eq)?;
            let h = self.name()?;
            compose.push(ComposeEntry { g, f, h });
        }
        let mut equiv = Vec::new();
        if *self.peek() == Tok::Keyword("equiv") {
            self.section("equiv")?;
            while self.at_name() {
                let a = self.name()?;
                self.punct(Tok::Tilde)?;
                equiv.push((a, self.name()?));
            }
        }
        Ok(TableBody {
            objects,
            arrows,
            identities,
            compose,
            equiv,
        })
    }

    fn presented(&mut self) -> DslResult<PresentedBody> {
        self.section("objects")?;
        let objects = self.names()?;
        self.section("generators")?;
        let generators = self.arrow_decls()?;
        let mut relations = Vec::new();
        if *self.peek() == Tok::Keyword("relations") {
            self.section("relations")?;
            while matches!(self.peek(), Tok::Name(_) | Tok::Keyword("id")) {
                let lhs = self.word()?;
                self.punct(Tok::Eq)?;
                let rhs = self.word()?;
                relations.push(Relation { lhs, rhs });
            }
        }
        Ok(PresentedBody {
            objects,
            generators,
            relations,
        })
    }

    fn functor(&mut self) -> DslResult<FunctorDecl> {
        let kind = match self.next().tok {
            Tok::Keyword("diagram") => FunctorKind::Diagram,
            _ => FunctorKind::Functor,
        };
        let name = self.name()?;
        self.punct(Tok::Colon)?;
        let source = self.name()?;
        self.punct(Tok::Arrow)?;
        let target = self.name()?;
        let (mut objs, mut arrs) = (Vec::new(), Vec::new());
        loop {
            match self.peek() {
                Tok::Keyword("obj") => {
                    self.next();
                    let a = self.name()?;
                    self.punct(Tok::Arrow)?;
                    objs.push((a, self.name()?));
                }
                Tok::Keyword("arr") => {
                    self.next();
                    let f = self.name()?;
                    self.punct(Tok::Arrow)?;
                    arrs.push((f, self.word()?));
                }
                _ => break,
            }
        }
        Ok(FunctorDecl {
            kind,
            name,
            source,
            target,
            objs,
            arrs,
        })
    }

    fn nat(&mut self) -> DslResult<NatDecl> {
        self.keyword("nat")?;
        let name = self.name()?;
        self.punct(Tok::Colon)?;
        let source = self.dotted()?;
        self.punct(Tok::DoubleArrow)?;
        let target = self.dotted()?;
        let mut components = Vec::new();
        while *self.peek() == Tok::Keyword("at") {
            self.next();
            let x = self.name()?;
            self.punct(Tok::Colon)?;
            components.push((x, self.word()?));
        }
        Ok(NatDecl {
            name,
            source,
            target,
            components,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_object_table() {
        let d = parse(
            "category One table\n objects: *\n arrows: i : * -> *\n id *: i\n compose: i.i = i",
        )
        .unwrap();
        let Item::Category(c) = &d.items[0] else {
            panic!()
        };
        let CategoryBody::Table(t) = &c.body else {
            panic!()
        };
        assert_eq!(t.objects[0].text, "*");
        assert_eq!(t.compose.len(), 1);
    }

    #[test]
    fn presented_with_empty_relations() {
        let d =
            parse("category A presented objects: a b generators: u : a -> b relations:").unwrap();
        assert_eq!(d.items.len(), 1);
        let d = parse("category A presented objects: a b generators: u : a -> b").unwrap();
        assert_eq!(d.items.len(), 1);
    }

    #[test]
    fn syntax_errors_carry_position_and_expectations() {
        match parse("category C table\n  objects: a\n  arrows: f a -> a") {
            Err(DslError::Syntax { pos, expected, .. }) => {
                assert_eq!((pos.line, pos.col), (3, 13));
                assert_eq!(expected, vec!["`:`".to_string()]);
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse("functor"), Err(DslError::Syntax { .. })));
        assert!(matches!(parse("objects"), Err(DslError::Syntax { .. })));
    }

    #[test]
    fn functors_and_nats() {
        let d = parse(
            "functor F : A -> B obj a -> x arr f -> g.h arr k -> id
             diagram D : J -> C obj j -> c
             nat t : G.F => H at a: f",
        )
        .unwrap();
        assert_eq!(d.items.len(), 3);
        let Item::Nat(n) = &d.items[2] else { panic!() };
        assert_eq!(n.source.len(), 2);
    }
}
