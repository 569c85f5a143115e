use std::fmt;

use super::Formula;

fn precedence(f: &Formula) -> u8 {
    match f {
        Formula::Iff(..) => 1,
        Formula::Implies(..) => 2,
        Formula::Or(..) => 3,
        Formula::And(..) => 4,
        Formula::Not(_) | Formula::Atom(_) | Formula::Const(_) => 5,
    }
}

fn write_operand(
    out: &mut fmt::Formatter<'_>,
    child: &Formula,
    parens: bool,
) -> fmt::Result {
    if parens {
        write!(out, "({child})")
    } else {
        write!(out, "{child}")
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (l, r, op) = match self {
            Formula::Const(true) => return out.write_str("true"),
            Formula::Const(false) => return out.write_str("false"),
            Formula::Atom(a) => return write!(out, "{a}"),
            Formula::Not(f) => {
                out.write_str("!")?;
                return write_operand(out, f, precedence(f) < 5);
            }
            Formula::And(l, r) => (l, r, "&"),
            Formula::Or(l, r) => (l, r, "|"),
            Formula::Implies(l, r) => (l, r, "->"),
            Formula::Iff(l, r) => (l, r, "<->"),
        };
        let p = precedence(self);
        let right_assoc = matches!(self, Formula::Implies(..));
        // Conjunctions under a disjunction are bracketed for readability.
        let bracket_and = matches!(self, Formula::Or(..));
        let needs = |child: &Formula, same_level_needs: bool| {
            let cp = precedence(child);
            cp < p
                || (cp == p && same_level_needs)
                || (bracket_and && matches!(child, Formula::And(..)))
        };
        write_operand(out, l, needs(l, right_assoc))?;
        write!(out, " {op} ")?;
        write_operand(out, r, needs(r, !right_assoc))
    }
}
