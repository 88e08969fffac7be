//! The line-oriented KB text format.
//!
//! One statement per line, `#` starts a comment. Signature blocks
//! (`Concepts:`, `Roles:`, `Individuals:`) and the `Language:` line are
//! optional: sorts are inferred from argument positions and the language
//! defaults to `ELHO-comp-bot-nf`. Concept names of the shape `X<digits>`
//! are reserved for normalisation and rejected at parse time.
//!
//! ```text
//! Concepts: A B
//! Roles: r
//! Individuals: a
//! Language: ELO-bot-nf
//! SubClassOf(A Bot)
//! Assert(A a)
//! ```

use super::syntax::*;

struct Cursor<'a> {
    text: &'a [u8],
    pos: usize,
    line: usize,
    line_start: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str, line: usize) -> Self {
        Cursor { text: text.as_bytes(), pos: 0, line, line_start: 0 }
    }

    fn col(&self) -> usize {
        self.pos - self.line_start + 1
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, KbError> {
        Err(KbError::Syntax { line: self.line, col: self.col(), msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && (self.text[self.pos] as char).is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.text.get(self.pos).map(|&b| b as char)
    }

    fn expect(&mut self, c: char) -> Result<(), KbError> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected `{c}`"))
        }
    }

    fn ident(&mut self) -> Result<String, KbError> {
        self.skip_ws();
        let start = self.pos;
        while self
            .peek()
            .map(|c| c.is_alphanumeric() || c == '_' || c == '-')
            .unwrap_or(false)
        {
            self.pos += 1;
        }
        if self.pos == start {
            return self.err("expected an identifier");
        }
        Ok(std::str::from_utf8(&self.text[start..self.pos])
            .expect("ascii idents")
            .to_string())
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.text.len()
    }
}

fn reserved_name(n: &str) -> bool {
    let mut chars = n.chars();
    chars.next() == Some('X') && {
        let rest: String = chars.collect();
        !rest.is_empty() && rest.chars().all(|c| c.is_ascii_digit())
    }
}

fn parse_concept(cur: &mut Cursor) -> Result<Concept, KbError> {
    cur.skip_ws();
    let head = cur.ident()?;
    match head.as_str() {
        "Top" => Ok(Concept::Top),
        "Bot" => Ok(Concept::Bot),
        "Nominal" => {
            cur.expect('(')?;
            let a = cur.ident()?;
            cur.expect(')')?;
            Ok(Concept::Nominal(a))
        }
        "And" | "Or" => {
            cur.expect('(')?;
            let x = parse_concept(cur)?;
            let y = parse_concept(cur)?;
            cur.expect(')')?;
            Ok(if head == "And" { Concept::and(x, y) } else { Concept::or(x, y) })
        }
        "Not" => {
            cur.expect('(')?;
            let x = parse_concept(cur)?;
            cur.expect(')')?;
            Ok(Concept::not(x))
        }
        "Exists" | "ExistsInv" => {
            cur.expect('(')?;
            let r = cur.ident()?;
            let x = parse_concept(cur)?;
            cur.expect(')')?;
            let atom = if head == "Exists" { RoleAtom::plain(&r) } else { RoleAtom::inv(&r) };
            Ok(Concept::Exists(atom, Box::new(x)))
        }
        name => {
            if reserved_name(name) {
                cur.err(format!("concept name `{name}` uses the reserved normalisation prefix"))
            } else {
                Ok(Concept::Name(name.to_string()))
            }
        }
    }
}

fn pattern_kind(name: &str) -> Option<PatternKind> {
    match name {
        "Symmetry" => Some(PatternKind::Symmetry),
        "Inversion" => Some(PatternKind::Inversion),
        "Hierarchy" => Some(PatternKind::Hierarchy),
        "Intersection" => Some(PatternKind::Intersection),
        "Composition" => Some(PatternKind::Composition),
        "Exclusion" => Some(PatternKind::Exclusion),
        "Asymmetry" => Some(PatternKind::Asymmetry),
        _ => None,
    }
}

/// Collects signature names from an axiom, by argument position.
pub fn collect_signature(sig: &mut Signature, ax: &Axiom) {
    fn walk(sig: &mut Signature, c: &Concept) {
        match c {
            Concept::Name(n) => sig.add_concept(n),
            Concept::Nominal(a) => sig.add_individual(a),
            Concept::Not(x) => walk(sig, x),
            Concept::And(x, y) | Concept::Or(x, y) => {
                walk(sig, x);
                walk(sig, y);
            }
            Concept::Exists(r, x) | Concept::Forall(r, x) => {
                sig.add_role(&r.name);
                walk(sig, x);
            }
            Concept::Top | Concept::Bot => {}
        }
    }
    match ax {
        Axiom::ConceptInclusion { lhs, rhs, .. } => {
            walk(sig, lhs);
            walk(sig, rhs);
        }
        Axiom::RoleInclusion { sub, sup } => {
            sig.add_role(&sub.name);
            sig.add_role(&sup.name);
        }
        Axiom::RoleComposition { first, second, sup } => {
            sig.add_role(first);
            sig.add_role(second);
            sig.add_role(sup);
        }
        Axiom::ConceptAssertion { concept, individual } => {
            sig.add_concept(concept);
            sig.add_individual(individual);
        }
        Axiom::RoleAssertion { role, subject, object } => {
            sig.add_role(role);
            sig.add_individual(subject);
            sig.add_individual(object);
        }
        Axiom::Pattern(p) => {
            for r in &p.roles {
                sig.add_role(r);
            }
        }
    }
}

/// Parses the KB text format; the result round-trips through
/// [`serialize_kb`] and is validated against its language tag.
pub fn parse_kb(text: &str) -> Result<KnowledgeBase, KbError> {
    let mut kb = KnowledgeBase::empty(LanguageTag::ElhoCompBotNf);
    let mut language_set = false;
    let mut declared = Signature::default();

    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let lineno = lineno + 1;
        if let Some(rest) = line.strip_prefix("Concepts:") {
            for n in rest.split_whitespace() {
                if reserved_name(n) {
                    return Err(KbError::Syntax {
                        line: lineno,
                        col: 1,
                        msg: format!("concept name `{n}` uses the reserved normalisation prefix"),
                    });
                }
                declared.add_concept(n);
            }
            continue;
        }
        if let Some(rest) = line.strip_prefix("Roles:") {
            for n in rest.split_whitespace() {
                declared.add_role(n);
            }
            continue;
        }
        if let Some(rest) = line.strip_prefix("Individuals:") {
            for n in rest.split_whitespace() {
                declared.add_individual(n);
            }
            continue;
        }
        if let Some(rest) = line.strip_prefix("Language:") {
            let tag = rest.trim();
            kb.language = LanguageTag::parse(tag).ok_or(KbError::Syntax {
                line: lineno,
                col: 1,
                msg: format!("unknown language tag `{tag}`"),
            })?;
            language_set = true;
            continue;
        }

        let mut cur = Cursor::new(line, lineno);
        let head = cur.ident()?;
        let axiom = match head.as_str() {
            "SubClassOf" => {
                cur.expect('(')?;
                let lhs = parse_concept(&mut cur)?;
                let rhs = parse_concept(&mut cur)?;
                cur.expect(')')?;
                Axiom::subclass(lhs, rhs)
            }
            "SubRoleOf" | "SubRoleOfInv" => {
                cur.expect('(')?;
                let r = cur.ident()?;
                let s = cur.ident()?;
                cur.expect(')')?;
                let sup = if head == "SubRoleOf" { RoleAtom::plain(&s) } else { RoleAtom::inv(&s) };
                Axiom::RoleInclusion { sub: RoleAtom::plain(&r), sup }
            }
            "SubCompositionOf" => {
                cur.expect('(')?;
                let r = cur.ident()?;
                let s = cur.ident()?;
                let t = cur.ident()?;
                cur.expect(')')?;
                Axiom::RoleComposition { first: r, second: s, sup: t }
            }
            "Pattern" => {
                cur.expect('(')?;
                let kind_name = cur.ident()?;
                let kind = match pattern_kind(&kind_name) {
                    Some(k) => k,
                    None => return cur.err(format!("unknown pattern kind `{kind_name}`")),
                };
                let mut roles = Vec::new();
                for _ in 0..kind.arity() {
                    roles.push(cur.ident()?);
                }
                cur.expect(')')?;
                Axiom::Pattern(Pattern { kind, roles })
            }
            "Assert" => {
                cur.expect('(')?;
                let first = cur.ident()?;
                let second = cur.ident()?;
                cur.skip_ws();
                if cur.peek() == Some(')') {
                    cur.expect(')')?;
                    Axiom::ConceptAssertion { concept: first, individual: second }
                } else {
                    let third = cur.ident()?;
                    cur.expect(')')?;
                    Axiom::RoleAssertion { role: first, subject: second, object: third }
                }
            }
            other => return cur.err(format!("unknown statement `{other}`")),
        };
        if !cur.at_end() {
            return cur.err("trailing input after statement");
        }
        if matches!(axiom, Axiom::ConceptAssertion { .. } | Axiom::RoleAssertion { .. }) {
            kb.abox.push(axiom);
        } else {
            kb.tbox.push(axiom);
        }
    }

    let _ = language_set;
    let mut sig = declared;
    for ax in kb.tbox.iter().chain(kb.abox.iter()) {
        collect_signature(&mut sig, ax);
    }
    kb.signature = sig;
    kb.validate()?;
    Ok(kb)
}

fn concept_text(c: &Concept) -> String {
    match c {
        Concept::Top => "Top".into(),
        Concept::Bot => "Bot".into(),
        Concept::Name(n) => n.clone(),
        Concept::Nominal(a) => format!("Nominal({a})"),
        Concept::Not(x) => format!("Not({})", concept_text(x)),
        Concept::And(x, y) => format!("And({} {})", concept_text(x), concept_text(y)),
        Concept::Or(x, y) => format!("Or({} {})", concept_text(x), concept_text(y)),
        Concept::Exists(r, x) if !r.inverse => format!("Exists({} {})", r.name, concept_text(x)),
        Concept::Exists(r, x) => format!("ExistsInv({} {})", r.name, concept_text(x)),
        Concept::Forall(r, x) if !r.inverse => format!("Forall({} {})", r.name, concept_text(x)),
        Concept::Forall(r, x) => format!("ForallInv({} {})", r.name, concept_text(x)),
    }
}

pub fn axiom_text(ax: &Axiom) -> String {
    match ax {
        Axiom::ConceptInclusion { lhs, rhs, .. } => {
            format!("SubClassOf({} {})", concept_text(lhs), concept_text(rhs))
        }
        Axiom::RoleInclusion { sub, sup } if !sup.inverse => {
            format!("SubRoleOf({} {})", sub.name, sup.name)
        }
        Axiom::RoleInclusion { sub, sup } => format!("SubRoleOfInv({} {})", sub.name, sup.name),
        Axiom::RoleComposition { first, second, sup } => {
            format!("SubCompositionOf({first} {second} {sup})")
        }
        Axiom::ConceptAssertion { concept, individual } => format!("Assert({concept} {individual})"),
        Axiom::RoleAssertion { role, subject, object } => {
            format!("Assert({role} {subject} {object})")
        }
        Axiom::Pattern(p) => {
            let roles = p.roles.join(" ");
            format!("Pattern({} {})", p.kind.name(), roles)
        }
    }
}

/// Serializes a KB; `parse_kb(serialize_kb(kb))` reproduces the KB, except
/// that the assertion-origin mark on encoded inclusions is not part of the
/// text format (serialize before encoding when the mark matters).
pub fn serialize_kb(kb: &KnowledgeBase) -> String {
    let mut out = String::new();
    if !kb.signature.concepts.is_empty() {
        out.push_str(&format!("Concepts: {}\n", kb.signature.concepts.join(" ")));
    }
    if !kb.signature.roles.is_empty() {
        out.push_str(&format!("Roles: {}\n", kb.signature.roles.join(" ")));
    }
    if !kb.signature.individuals.is_empty() {
        out.push_str(&format!("Individuals: {}\n", kb.signature.individuals.join(" ")));
    }
    out.push_str(&format!("Language: {}\n", kb.language.as_str()));
    for ax in kb.tbox.iter().chain(kb.abox.iter()) {
        out.push_str(&axiom_text(ax));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_minimal_unsound_kb() {
        let kb = parse_kb("SubClassOf(A Bot)\nAssert(A a)").unwrap();
        assert_eq!(kb.tbox, vec![Axiom::subclass(Concept::name("A"), Concept::Bot)]);
        assert_eq!(
            kb.abox,
            vec![Axiom::ConceptAssertion { concept: "A".into(), individual: "a".into() }]
        );
        assert_eq!(kb.signature.concepts, vec!["A"]);
        assert_eq!(kb.signature.individuals, vec!["a"]);
    }

    #[test]
    fn empty_text_is_the_empty_kb() {
        let kb = parse_kb("").unwrap();
        assert!(kb.tbox.is_empty() && kb.abox.is_empty());
        assert!(kb.signature.concepts.is_empty());
    }

    #[test]
    fn language_violations_are_reported() {
        let err = parse_kb("Language: patterns-no-comp\nPattern(Composition r s t)").unwrap_err();
        assert!(matches!(err, KbError::LanguageViolation { .. }));
    }

    #[test]
    fn syntax_errors_carry_position() {
        let err = parse_kb("SubClassOf(A").unwrap_err();
        match err {
            KbError::Syntax { line, col, .. } => {
                assert_eq!(line, 1);
                assert!(col >= 12);
            }
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn reserved_prefix_is_rejected() {
        assert!(parse_kb("SubClassOf(X0 Bot)").is_err());
        assert!(parse_kb("Concepts: X12").is_err());
        // X alone or Xa are ordinary names
        assert!(parse_kb("SubClassOf(X Bot)").is_ok());
        assert!(parse_kb("SubClassOf(Xa Bot)").is_ok());
    }

    #[test]
    fn round_trips_through_serialize() {
        let text = "Concepts: A B\nRoles: r s\nIndividuals: a b\nLanguage: ELHO-comp-bot-nf\n\
                    SubClassOf(A Exists(r B))\nSubClassOf(And(A B) Bot)\nSubRoleOf(r s)\n\
                    SubCompositionOf(r s r)\nAssert(A a)\nAssert(r a b)\n";
        let kb = parse_kb(text).unwrap();
        let printed = serialize_kb(&kb);
        let again = parse_kb(&printed).unwrap();
        assert_eq!(kb, again);
        assert_eq!(printed, serialize_kb(&again));
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let kb = parse_kb("# header\n\nSubClassOf(A B) # trailing\n").unwrap();
        assert_eq!(kb.tbox.len(), 1);
    }

    #[test]
    fn alcp_constructors_parse() {
        let text = "Language: ALCp\nSubClassOf(Not(A) Or(B Not(C)))\nAssert(A a)";
        let kb = parse_kb(text).unwrap();
        assert_eq!(kb.language, LanguageTag::AlcP);
        assert_eq!(kb.tbox.len(), 1);
    }
}
