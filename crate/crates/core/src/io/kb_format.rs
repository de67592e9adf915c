//! Line-based knowledge-base format.
//!
//! ```text
//! concept Person
//! role hasChild
//! ind alice
//! sub Female Person                       # Female ⊑ Person
//! equiv Parent (some hasChild Person)     # Parent ≡ ∃hasChild.Person
//! type alice Female
//! rel alice hasChild carol
//! ```
//!
//! Entities must be declared before use. `Thing` is predeclared.

use super::{strip_comment, ParseError};
use crate::kb::{Axiom, ConceptExpression, KnowledgeBase};

pub fn parse_kb(text: &str) -> Result<KnowledgeBase, ParseError> {
    let mut kb = KnowledgeBase::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = strip_comment(raw);
        if content.is_empty() {
            continue;
        }
        let (keyword, rest) = content
            .split_once(char::is_whitespace)
            .map(|(k, r)| (k, r.trim()))
            .unwrap_or((content, ""));
        let args: Vec<&str> = rest.split_whitespace().collect();
        let want = |n: usize| -> Result<(), ParseError> {
            if args.len() == n {
                Ok(())
            } else {
                Err(ParseError::syntax(
                    line,
                    format!("`{keyword}` takes {n} argument(s), found {}", args.len()),
                ))
            }
        };
        let semantic = |source| ParseError::Semantic { line, source };
        match keyword {
            "concept" => {
                want(1)?;
                kb.declare_concept(args[0]).map_err(semantic)?;
            }
            "role" => {
                want(1)?;
                kb.declare_role(args[0]).map_err(semantic)?;
            }
            "ind" => {
                want(1)?;
                kb.declare_individual(args[0]).map_err(semantic)?;
            }
            "sub" => {
                want(2)?;
                kb.add_subsumption(args[0], args[1]).map_err(semantic)?;
            }
            "equiv" => {
                let (name, body) = rest
                    .split_once(char::is_whitespace)
                    .ok_or_else(|| ParseError::syntax(line, "`equiv` needs a name and a definition"))?;
                let def = parse_sexpr(body.trim()).map_err(|m| ParseError::syntax(line, m))?;
                kb.add_equivalence(name, &def).map_err(semantic)?;
            }
            "type" => {
                want(2)?;
                kb.assert_type(args[0], args[1]).map_err(semantic)?;
            }
            "rel" => {
                want(3)?;
                kb.assert_rel(args[0], args[1], args[2]).map_err(semantic)?;
            }
            other => return Err(ParseError::syntax(line, format!("unknown statement `{other}`"))),
        }
    }
    Ok(kb)
}

fn parse_sexpr(text: &str) -> Result<ConceptExpression, String> {
    let spaced = text.replace('(', " ( ").replace(')', " ) ");
    let tokens: Vec<&str> = spaced.split_whitespace().collect();
    let mut pos = 0;
    let e = sexpr(&tokens, &mut pos)?;
    if pos != tokens.len() {
        return Err(format!("trailing input after definition: `{}`", tokens[pos..].join(" ")));
    }
    Ok(e)
}

fn sexpr(tokens: &[&str], pos: &mut usize) -> Result<ConceptExpression, String> {
    let tok = *tokens.get(*pos).ok_or("unexpected end of definition")?;
    *pos += 1;
    match tok {
        "(" => {
            let head = *tokens.get(*pos).ok_or("unexpected end of definition")?;
            *pos += 1;
            let e = match head {
                "and" | "or" => {
                    let mut children = Vec::new();
                    while tokens.get(*pos).is_some_and(|t| *t != ")") {
                        children.push(sexpr(tokens, pos)?);
                    }
                    if children.len() < 2 {
                        return Err(format!("`{head}` needs at least two operands"));
                    }
                    if head == "and" {
                        ConceptExpression::Conj(children)
                    } else {
                        ConceptExpression::Disj(children)
                    }
                }
                "not" => ConceptExpression::neg(sexpr(tokens, pos)?),
                "some" => {
                    let role = *tokens.get(*pos).ok_or("`some` needs a role")?;
                    if role == "(" || role == ")" {
                        return Err("`some` needs a role name".into());
                    }
                    *pos += 1;
                    ConceptExpression::exists(role, sexpr(tokens, pos)?)
                }
                other => return Err(format!("expected `and`, `or`, `not` or `some`, found `{other}`")),
            };
            if tokens.get(*pos) != Some(&")") {
                return Err("expected `)`".into());
            }
            *pos += 1;
            Ok(e)
        }
        ")" => Err("unexpected `)`".into()),
        name => Ok(ConceptExpression::atomic(name)),
    }
}

fn write_sexpr(e: &ConceptExpression, out: &mut String) {
    match e {
        ConceptExpression::Atomic(a) => out.push_str(a.name()),
        ConceptExpression::Conj(cs) => {
            out.push_str("(and");
            for c in cs {
                out.push(' ');
                write_sexpr(c, out);
            }
            out.push(')');
        }
        ConceptExpression::Exists(r, inner) => {
            out.push_str("(some ");
            out.push_str(r.name());
            out.push(' ');
            write_sexpr(inner, out);
            out.push(')');
        }
        // equivalence definitions never contain these
        ConceptExpression::Disj(_) | ConceptExpression::Neg(_) => {
            unreachable!("non-EL definition in knowledge base")
        }
    }
}

/// Writes the knowledge base with each statement kind grouped and sorted,
/// so equal knowledge bases serialize to identical bytes.
pub fn serialize_kb(kb: &KnowledgeBase) -> String {
    let mut sections: Vec<Vec<String>> = vec![Vec::new(); 7];
    for c in kb.concepts().iter().filter(|c| !c.is_top()) {
        sections[0].push(format!("concept {}", c.name));
    }
    for r in kb.role_ids() {
        sections[1].push(format!("role {}", kb.role(r)));
    }
    for i in kb.individual_ids() {
        sections[2].push(format!("ind {}", kb.individual_name(i)));
    }
    for ax in kb.axioms() {
        match ax {
            Axiom::Subconcept(a, b) => sections[3].push(format!("sub {a} {b}")),
            Axiom::Equivalence(a, e) => {
                let mut s = format!("equiv {a} ");
                write_sexpr(e, &mut s);
                sections[4].push(s);
            }
        }
    }
    for &(a, c) in kb.type_assertions() {
        sections[5].push(format!("type {} {}", kb.individual_name(a), kb.concept_name(c)));
    }
    for &(a, r, b) in kb.rel_assertions() {
        sections[6].push(format!(
            "rel {} {} {}",
            kb.individual_name(a),
            kb.role(r),
            kb.individual_name(b)
        ));
    }
    let mut out = String::new();
    for mut section in sections {
        section.sort();
        for line in section {
            out.push_str(&line);
            out.push('\n');
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kb::{family_fixture, KbError};

    pub(crate) const FAMILY: &str = "\
# family fixture
concept Person
concept Male
concept Female
concept Parent
role hasChild
ind alice
ind bob
ind carol
ind dave
sub Male Person
sub Female Person
equiv Parent (some hasChild Person)
type alice Female
type bob Male
type carol Female
type dave Male
rel alice hasChild carol
rel bob hasChild dave
";

    #[test]
    fn parses_family_fixture() {
        let kb = parse_kb(FAMILY).unwrap();
        assert_eq!(kb.num_concepts(), 5);
        assert_eq!(kb.num_roles(), 1);
        assert_eq!(kb.num_individuals(), 4);
        assert_eq!(kb.axioms().len(), 3);
        assert_eq!(kb.type_assertions().len() + kb.rel_assertions().len(), 6);
        assert_eq!(kb, family_fixture());
    }

    #[test]
    fn empty_input_has_only_top() {
        let kb = parse_kb("").unwrap();
        assert_eq!(kb.num_concepts(), 1);
        assert_eq!(serialize_kb(&kb), "");
    }

    #[test]
    fn use_before_declaration_is_semantic_error() {
        let err = parse_kb("concept Female\ntype alice Female\nind alice\n").unwrap_err();
        assert!(err.is_semantic());
        assert!(matches!(
            err,
            ParseError::Semantic {
                line: 2,
                source: KbError::Undeclared { .. }
            }
        ));
    }

    #[test]
    fn syntax_errors_carry_line_numbers() {
        let err = parse_kb("concept A\nconcept\n").unwrap_err();
        assert_eq!(
            err,
            ParseError::Syntax {
                line: 2,
                message: "`concept` takes 1 argument(s), found 0".into()
            }
        );
        assert!(parse_kb("frobnicate A").is_err());
        assert!(parse_kb("concept A\nequiv A (or A A)").unwrap_err().is_semantic());
        assert!(parse_kb("concept A\nequiv A (not A)").unwrap_err().is_semantic());
        assert!(parse_kb("concept A\nequiv A (and A").is_err());
    }

    #[test]
    fn duplicate_declaration_rejected() {
        let err = parse_kb("concept A\nconcept A\n").unwrap_err();
        assert!(matches!(
            err,
            ParseError::Semantic {
                source: KbError::Duplicate { .. },
                ..
            }
        ));
    }

    #[test]
    fn serialization_round_trip_and_stability() {
        let kb = parse_kb(FAMILY).unwrap();
        let text = serialize_kb(&kb);
        assert_eq!(parse_kb(&text).unwrap(), kb);
        assert_eq!(serialize_kb(&kb), text);
        assert!(text.contains("equiv Parent (some hasChild Person)\n"));
    }
}
