//! Parser for the concrete formula syntax printed by `StateFormula`'s
//! `Display`:
//!
//! ```text
//! formula := unary ('&' unary)*
//! unary   := 'T' | '~' unary | '&' unary | '(' formula ')' | '<' action '>' dist
//! dist    := unary | '(' weight unary ('(+)' weight unary)* ')'
//! weight  := digits ('/' digits)?
//! ```
//!
//! A prefix `&` builds a one-member conjunction. Inside `<a>(...)` a leading
//! number selects the distribution form.

use mimicry_core::{DistFormula, Label, StateFormula};

use crate::cursor::{Cursor, ParseError};

/// Parses a state formula.
pub fn parse_formula(text: &str) -> Result<StateFormula, ParseError> {
    let mut cur = Cursor::new(text, 1);
    let phi = formula(&mut cur)?;
    cur.skip_ws();
    if cur.peek().is_some() {
        return Err(cur.unexpected("end of formula"));
    }
    Ok(phi)
}

fn formula(cur: &mut Cursor<'_>) -> Result<StateFormula, ParseError> {
    let mut members = vec![unary(cur)?];
    loop {
        cur.skip_ws();
        if !cur.eat('&') {
            break;
        }
        members.push(unary(cur)?);
    }
    Ok(if members.len() == 1 {
        members.pop().unwrap()
    } else {
        StateFormula::and(members).expect("nonempty")
    })
}

fn unary(cur: &mut Cursor<'_>) -> Result<StateFormula, ParseError> {
    cur.skip_ws();
    match cur.peek() {
        Some('T') => {
            cur.bump();
            Ok(StateFormula::Top)
        }
        Some('~') => {
            cur.bump();
            Ok(StateFormula::not(unary(cur)?))
        }
        Some('&') => {
            cur.bump();
            Ok(StateFormula::and(vec![unary(cur)?]).expect("nonempty"))
        }
        Some('(') => {
            cur.bump();
            let phi = formula(cur)?;
            cur.skip_ws();
            cur.expect(')')?;
            Ok(phi)
        }
        Some('<') => {
            cur.bump();
            cur.skip_ws();
            let name = cur.ident("an action name")?;
            cur.skip_ws();
            cur.expect('>')?;
            let action = Label::new(&name).expect("identifiers are nonempty");
            Ok(StateFormula::diamond(action, dist(cur)?))
        }
        _ => Err(cur.unexpected("a formula")),
    }
}

fn dist(cur: &mut Cursor<'_>) -> Result<DistFormula, ParseError> {
    cur.skip_ws();
    if !cur.eat('(') {
        return Ok(DistFormula::single(unary(cur)?));
    }
    cur.skip_ws();
    if !cur.peek().is_some_and(|c| c.is_ascii_digit()) {
        let phi = formula(cur)?;
        cur.skip_ws();
        cur.expect(')')?;
        return Ok(DistFormula::single(phi));
    }
    let start = cur.error("");
    let mut terms = Vec::new();
    loop {
        cur.skip_ws();
        let weight = cur.rational()?;
        terms.push((weight, unary(cur)?));
        cur.skip_ws();
        if cur.eat(')') {
            break;
        }
        cur.expect('(')?;
        cur.skip_ws();
        cur.expect('+')?;
        cur.skip_ws();
        cur.expect(')')?;
    }
    DistFormula::new(terms).map_err(|e| ParseError { message: e.to_string(), ..start })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nested_diamonds() {
        let phi = parse_formula("<a><b>T").unwrap();
        let a = Label::new("a").unwrap();
        let b = Label::new("b").unwrap();
        let expected = StateFormula::diamond_state(a, StateFormula::diamond_state(b, StateFormula::Top));
        assert_eq!(phi, expected);
    }

    #[test]
    fn distribution_form() {
        let phi = parse_formula("<a>(3/4 (<b>T & <b>T) (+) 1/4 <b>T)").unwrap();
        assert_eq!(phi.to_string(), "<a>(3/4 (<b>T & <b>T) (+) 1/4 <b>T)");
    }

    #[test]
    fn grouping_and_singletons() {
        for text in ["T", "~T", "&T", "(T & T) & ~<a>T", "<a>(T & &T)", "~(T & T)"] {
            assert_eq!(parse_formula(text).unwrap().to_string(), text);
        }
        assert_eq!(parse_formula("((T))").unwrap(), StateFormula::Top);
    }

    #[test]
    fn rejects_bad_input() {
        let err = parse_formula("<a>(1/2 T (+) 1/3 T)").unwrap_err();
        assert_eq!((err.line, err.column), (1, 5));
        assert!(parse_formula("T T").is_err());
        assert!(parse_formula("<a>(1/0 T)").is_err());
        assert!(parse_formula("").is_err());
    }
}
