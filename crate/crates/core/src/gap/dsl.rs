//! S-expression text form for gap programs, FP functions and target specs.
//!
//! ```text
//! program := (base MACHINE) | (const FP) | (neg P) | (add P P) | (sub P P)
//!          | (mul P P) | (prod POLY RANGE P) | (compose P MAP)
//! machine := (machine "name" (alphabet "01") (max-len L) (time POLY)
//!             (tree "word" TREE)...)
//! tree    := acc | rej | (c TREE TREE)
//! fp      := INT | idx | len | (len MAP) | (neg FP) | (+ FP FP) | (- FP FP)
//!          | (* FP FP) | (apply FP MAP) | (product POLY RANGE MAP FP)
//!          | (table [(default INT)] ("word" INT)...)
//! map     := id | unary | first | (map-first MAP) | (then MAP MAP)
//! targets := (targets length|input POLY FP)
//! two     := (two-sided TARGETS TARGETS)
//! POLY is an atom such as `n^2+2`; RANGE is `from0` or `from1`.
//! ```

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::gap::fp::{FpFunc, IndexRange};
use crate::gap::machine::BaseMachine;
use crate::gap::program::GapProgram;
use crate::gap::target::{TargetMode, TargetSpec, TwoSidedTargetSpec};
use crate::gap::tree::{ChoiceTree, Node};
use crate::natpoly::NatPoly;
use crate::word::{Domain, StrMap, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Sexp {
    Atom(String),
    Str(String),
    List(Vec<Sexp>),
}

impl fmt::Display for Sexp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sexp::Atom(a) => f.write_str(a),
            Sexp::Str(s) => {
                f.write_str("\"")?;
                for c in s.chars() {
                    if c == '"' || c == '\\' {
                        f.write_str("\\")?;
                    }
                    write!(f, "{c}")?;
                }
                f.write_str("\"")
            }
            Sexp::List(items) => {
                f.write_str("(")?;
                for (k, item) in items.iter().enumerate() {
                    if k > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "{item}")?;
                }
                f.write_str(")")
            }
        }
    }
}

fn perr(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

pub fn parse_sexp(src: &str) -> Result<Sexp> {
    let mut parser = Parser {
        chars: src.chars().collect(),
        pos: 0,
    };
    let value = parser.value()?;
    parser.skip_ws();
    if parser.pos != parser.chars.len() {
        return Err(perr(format!("trailing input at offset {}", parser.pos)));
    }
    Ok(value)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn skip_ws(&mut self) {
        while let Some(&c) = self.chars.get(self.pos) {
            if c == ';' {
                while self.chars.get(self.pos).is_some_and(|&c| c != '\n') {
                    self.pos += 1;
                }
            } else if c.is_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn value(&mut self) -> Result<Sexp> {
        self.skip_ws();
        match self.chars.get(self.pos) {
            None => Err(perr("unexpected end of input")),
            Some('(') => {
                self.pos += 1;
                let mut items = Vec::new();
                loop {
                    self.skip_ws();
                    match self.chars.get(self.pos) {
                        None => return Err(perr("unclosed '('")),
                        Some(')') => {
                            self.pos += 1;
                            return Ok(Sexp::List(items));
                        }
                        _ => items.push(self.value()?),
                    }
                }
            }
            Some(')') => Err(perr(format!("unexpected ')' at offset {}", self.pos))),
            Some('"') => {
                self.pos += 1;
                let mut s = String::new();
                loop {
                    match self.chars.get(self.pos) {
                        None => return Err(perr("unterminated string")),
                        Some('"') => {
                            self.pos += 1;
                            return Ok(Sexp::Str(s));
                        }
                        Some('\\') => {
                            let c = self
                                .chars
                                .get(self.pos + 1)
                                .ok_or_else(|| perr("dangling escape"))?;
                            s.push(*c);
                            self.pos += 2;
                        }
                        Some(&c) => {
                            s.push(c);
                            self.pos += 1;
                        }
                    }
                }
            }
            Some(_) => {
                let start = self.pos;
                while self
                    .chars
                    .get(self.pos)
                    .is_some_and(|&c| !c.is_whitespace() && c != '(' && c != ')' && c != '"')
                {
                    self.pos += 1;
                }
                Ok(Sexp::Atom(self.chars[start..self.pos].iter().collect()))
            }
        }
    }
}

fn atom(s: &str) -> Sexp {
    Sexp::Atom(s.to_string())
}

fn list(items: Vec<Sexp>) -> Sexp {
    Sexp::List(items)
}

fn head(items: &[Sexp]) -> Result<(&str, &[Sexp])> {
    match items.split_first() {
        Some((Sexp::Atom(h), rest)) => Ok((h.as_str(), rest)),
        _ => Err(perr("expected a list starting with a keyword")),
    }
}

fn arity(name: &str, args: &[Sexp], n: usize) -> Result<()> {
    if args.len() != n {
        return Err(perr(format!("{name} takes {n} arguments, got {}", args.len())));
    }
    Ok(())
}

fn as_atom(s: &Sexp) -> Result<&str> {
    match s {
        Sexp::Atom(a) => Ok(a),
        other => Err(perr(format!("expected atom, got {other}"))),
    }
}

fn as_str(s: &Sexp) -> Result<&str> {
    match s {
        Sexp::Str(a) => Ok(a),
        other => Err(perr(format!("expected string, got {other}"))),
    }
}

fn as_int(s: &Sexp) -> Result<BigInt> {
    as_atom(s)?
        .parse()
        .map_err(|_| perr(format!("expected integer, got {s}")))
}

fn as_usize(s: &Sexp) -> Result<usize> {
    as_atom(s)?
        .parse()
        .map_err(|_| perr(format!("expected natural number, got {s}")))
}

// ---- polynomials, ranges, maps ----

fn poly_from(s: &Sexp) -> Result<NatPoly> {
    match s {
        Sexp::Atom(a) | Sexp::Str(a) => a.parse(),
        other => Err(perr(format!("expected polynomial, got {other}"))),
    }
}

fn poly_to(p: &NatPoly) -> Sexp {
    atom(&p.to_string())
}

fn range_from(s: &Sexp) -> Result<IndexRange> {
    match as_atom(s)? {
        "from0" => Ok(IndexRange::From0),
        "from1" => Ok(IndexRange::From1),
        other => Err(perr(format!("unknown range {other:?}"))),
    }
}

fn range_to(r: IndexRange) -> Sexp {
    atom(match r {
        IndexRange::From0 => "from0",
        IndexRange::From1 => "from1",
    })
}

pub fn map_from_sexp(s: &Sexp) -> Result<StrMap> {
    match s {
        Sexp::Atom(a) => match a.as_str() {
            "id" => Ok(StrMap::Identity),
            "unary" => Ok(StrMap::Unary),
            "first" => Ok(StrMap::First),
            other => Err(perr(format!("unknown map {other:?}"))),
        },
        Sexp::List(items) => {
            let (h, args) = head(items)?;
            match h {
                "map-first" => {
                    arity(h, args, 1)?;
                    Ok(StrMap::map_first(map_from_sexp(&args[0])?))
                }
                "then" => {
                    arity(h, args, 2)?;
                    Ok(map_from_sexp(&args[0])?.then(map_from_sexp(&args[1])?))
                }
                other => Err(perr(format!("unknown map {other:?}"))),
            }
        }
        other => Err(perr(format!("expected map, got {other}"))),
    }
}

pub fn map_to_sexp(m: &StrMap) -> Sexp {
    match m {
        StrMap::Identity => atom("id"),
        StrMap::Unary => atom("unary"),
        StrMap::First => atom("first"),
        StrMap::MapFirst(inner) => list(vec![atom("map-first"), map_to_sexp(inner)]),
        StrMap::Then(a, b) => list(vec![atom("then"), map_to_sexp(a), map_to_sexp(b)]),
    }
}

// ---- FP functions ----

pub fn fp_from_sexp(s: &Sexp) -> Result<FpFunc> {
    match s {
        Sexp::Atom(a) => match a.as_str() {
            "idx" => Ok(FpFunc::Index),
            "len" => Ok(FpFunc::len()),
            _ => Ok(FpFunc::Const(as_int(s)?)),
        },
        Sexp::List(items) => {
            let (h, args) = head(items)?;
            let fp = |k: usize| fp_from_sexp(&args[k]);
            match h {
                "len" => {
                    arity(h, args, 1)?;
                    Ok(FpFunc::Len(map_from_sexp(&args[0])?))
                }
                "neg" => {
                    arity(h, args, 1)?;
                    Ok(fp(0)?.neg())
                }
                "+" => {
                    arity(h, args, 2)?;
                    Ok(fp(0)?.add(fp(1)?))
                }
                "-" => {
                    arity(h, args, 2)?;
                    Ok(fp(0)?.sub(fp(1)?))
                }
                "*" => {
                    arity(h, args, 2)?;
                    Ok(fp(0)?.mul(fp(1)?))
                }
                "apply" => {
                    arity(h, args, 2)?;
                    Ok(FpFunc::Apply(Box::new(fp(0)?), map_from_sexp(&args[1])?))
                }
                "product" => {
                    arity(h, args, 4)?;
                    Ok(FpFunc::product(
                        fp(3)?,
                        poly_from(&args[0])?,
                        map_from_sexp(&args[2])?,
                        range_from(&args[1])?,
                    ))
                }
                "table" => {
                    let mut entries = BTreeMap::new();
                    let mut default = None;
                    for entry in args {
                        let Sexp::List(kv) = entry else {
                            return Err(perr("table entries are lists"));
                        };
                        match kv.as_slice() {
                            [Sexp::Atom(d), v] if d == "default" => default = Some(as_int(v)?),
                            [k, v] => {
                                entries.insert(Word::new(as_str(k)?), as_int(v)?);
                            }
                            _ => return Err(perr("table entry must be (\"word\" INT)")),
                        }
                    }
                    Ok(FpFunc::Table { entries, default })
                }
                other => Err(perr(format!("unknown FP form {other:?}"))),
            }
        }
        Sexp::Str(_) => Err(perr(format!("expected FP expression, got {s}"))),
    }
}

pub fn fp_to_sexp(f: &FpFunc) -> Sexp {
    match f {
        FpFunc::Const(v) => atom(&v.to_string()),
        FpFunc::Index => atom("idx"),
        FpFunc::Len(StrMap::Identity) => atom("len"),
        FpFunc::Len(m) => list(vec![atom("len"), map_to_sexp(m)]),
        FpFunc::Neg(a) => list(vec![atom("neg"), fp_to_sexp(a)]),
        FpFunc::Add(a, b) => list(vec![atom("+"), fp_to_sexp(a), fp_to_sexp(b)]),
        FpFunc::Sub(a, b) => list(vec![atom("-"), fp_to_sexp(a), fp_to_sexp(b)]),
        FpFunc::Mul(a, b) => list(vec![atom("*"), fp_to_sexp(a), fp_to_sexp(b)]),
        FpFunc::Apply(a, m) => list(vec![atom("apply"), fp_to_sexp(a), map_to_sexp(m)]),
        FpFunc::Product {
            bound,
            at,
            range,
            body,
        } => list(vec![
            atom("product"),
            poly_to(bound),
            range_to(*range),
            map_to_sexp(at),
            fp_to_sexp(body),
        ]),
        FpFunc::Table { entries, default } => {
            let mut items = vec![atom("table")];
            if let Some(d) = default {
                items.push(list(vec![atom("default"), atom(&d.to_string())]));
            }
            for (k, v) in entries {
                items.push(list(vec![Sexp::Str(k.to_string()), atom(&v.to_string())]));
            }
            list(items)
        }
    }
}

// ---- machines ----

fn tree_from(s: &Sexp) -> Result<ChoiceTree> {
    match s {
        Sexp::Atom(a) if a == "acc" => Ok(ChoiceTree::accept()),
        Sexp::Atom(a) if a == "rej" => Ok(ChoiceTree::reject()),
        Sexp::List(items) => {
            let (h, args) = head(items)?;
            if h != "c" {
                return Err(perr(format!("unknown tree form {h:?}")));
            }
            arity(h, args, 2)?;
            Ok(ChoiceTree::choice(tree_from(&args[0])?, tree_from(&args[1])?))
        }
        other => Err(perr(format!("expected tree, got {other}"))),
    }
}

fn tree_to(t: &ChoiceTree) -> Sexp {
    match t.node() {
        Node::Accept => atom("acc"),
        Node::Reject => atom("rej"),
        Node::Choice(l, r) => list(vec![atom("c"), tree_to(l), tree_to(r)]),
    }
}

pub fn machine_from_sexp(s: &Sexp) -> Result<BaseMachine> {
    let Sexp::List(items) = s else {
        return Err(perr("expected (machine ...)"));
    };
    let (h, args) = head(items)?;
    if h != "machine" {
        return Err(perr(format!("expected machine, got {h:?}")));
    }
    let (name, fields) = args
        .split_first()
        .ok_or_else(|| perr("machine needs a name"))?;
    let mut alphabet = vec!['0', '1'];
    let mut max_len = None;
    let mut time = None;
    let mut trees = BTreeMap::new();
    for field in fields {
        let Sexp::List(kv) = field else {
            return Err(perr("machine fields are lists"));
        };
        let (key, vals) = head(kv)?;
        match key {
            "alphabet" => {
                arity(key, vals, 1)?;
                alphabet = as_str(&vals[0])?.chars().collect();
            }
            "max-len" => {
                arity(key, vals, 1)?;
                max_len = Some(as_usize(&vals[0])?);
            }
            "time" => {
                arity(key, vals, 1)?;
                time = Some(poly_from(&vals[0])?);
            }
            "tree" => {
                arity(key, vals, 2)?;
                trees.insert(Word::new(as_str(&vals[0])?), tree_from(&vals[1])?);
            }
            other => return Err(perr(format!("unknown machine field {other:?}"))),
        }
    }
    let domain = Domain {
        alphabet,
        max_len: max_len.ok_or_else(|| perr("machine needs (max-len L)"))?,
    };
    BaseMachine::new(
        as_str(name)?,
        domain,
        time.ok_or_else(|| perr("machine needs (time POLY)"))?,
        trees,
    )
    .map_err(|e| perr(e.to_string()))
}

pub fn machine_to_sexp(m: &BaseMachine) -> Sexp {
    let mut items = vec![
        atom("machine"),
        Sexp::Str(m.name().to_string()),
        list(vec![
            atom("alphabet"),
            Sexp::Str(m.domain().alphabet.iter().collect()),
        ]),
        list(vec![atom("max-len"), atom(&m.domain().max_len.to_string())]),
        list(vec![atom("time"), poly_to(m.time_bound())]),
    ];
    for (w, t) in m.trees() {
        items.push(list(vec![atom("tree"), Sexp::Str(w.to_string()), tree_to(t)]));
    }
    list(items)
}

// ---- programs ----

pub fn program_from_sexp(s: &Sexp) -> Result<GapProgram> {
    let Sexp::List(items) = s else {
        return Err(perr(format!("expected program, got {s}")));
    };
    let (h, args) = head(items)?;
    let prog = |k: usize| program_from_sexp(&args[k]);
    match h {
        "base" => {
            arity(h, args, 1)?;
            Ok(GapProgram::base(machine_from_sexp(&args[0])?))
        }
        "const" => {
            arity(h, args, 1)?;
            Ok(GapProgram::constant(fp_from_sexp(&args[0])?))
        }
        "neg" => {
            arity(h, args, 1)?;
            Ok(prog(0)?.neg())
        }
        "add" => {
            arity(h, args, 2)?;
            Ok(prog(0)?.add(prog(1)?))
        }
        "sub" => {
            arity(h, args, 2)?;
            Ok(prog(0)?.sub(prog(1)?))
        }
        "mul" => {
            arity(h, args, 2)?;
            Ok(prog(0)?.mul(prog(1)?))
        }
        "prod" => {
            arity(h, args, 3)?;
            Ok(GapProgram::PolyProd {
                bound: poly_from(&args[0])?,
                range: range_from(&args[1])?,
                child: Box::new(prog(2)?),
            })
        }
        "compose" => {
            arity(h, args, 2)?;
            Ok(prog(0)?.compose(map_from_sexp(&args[1])?))
        }
        other => Err(perr(format!("unknown program form {other:?}"))),
    }
}

pub fn program_to_sexp(p: &GapProgram) -> Sexp {
    let bin = |name: &str, a: &GapProgram, b: &GapProgram| {
        list(vec![atom(name), program_to_sexp(a), program_to_sexp(b)])
    };
    match p {
        GapProgram::Base(m) => list(vec![atom("base"), machine_to_sexp(m)]),
        GapProgram::Const(f) => list(vec![atom("const"), fp_to_sexp(f)]),
        GapProgram::Neg(a) => list(vec![atom("neg"), program_to_sexp(a)]),
        GapProgram::Add(a, b) => bin("add", a, b),
        GapProgram::Sub(a, b) => bin("sub", a, b),
        GapProgram::Mul(a, b) => bin("mul", a, b),
        GapProgram::PolyProd {
            bound,
            range,
            child,
        } => list(vec![
            atom("prod"),
            poly_to(bound),
            range_to(*range),
            program_to_sexp(child),
        ]),
        GapProgram::Compose(a, m) => list(vec![atom("compose"), program_to_sexp(a), map_to_sexp(m)]),
    }
}

// ---- target specs ----

pub fn targets_from_sexp(s: &Sexp) -> Result<TargetSpec> {
    let Sexp::List(items) = s else {
        return Err(perr("expected (targets ...)"));
    };
    let (h, args) = head(items)?;
    if h != "targets" {
        return Err(perr(format!("expected targets, got {h:?}")));
    }
    arity(h, args, 3)?;
    let mode = match as_atom(&args[0])? {
        "length" => TargetMode::Length,
        "input" => TargetMode::Input,
        other => return Err(perr(format!("unknown target mode {other:?}"))),
    };
    Ok(TargetSpec::new(mode, fp_from_sexp(&args[2])?, poly_from(&args[1])?))
}

pub fn targets_to_sexp(t: &TargetSpec) -> Sexp {
    let mode = match t.mode {
        TargetMode::Length => "length",
        TargetMode::Input => "input",
    };
    list(vec![atom("targets"), atom(mode), poly_to(&t.r), fp_to_sexp(&t.f)])
}

pub fn two_sided_from_sexp(s: &Sexp) -> Result<TwoSidedTargetSpec> {
    let Sexp::List(items) = s else {
        return Err(perr("expected (two-sided ...)"));
    };
    let (h, args) = head(items)?;
    if h != "two-sided" {
        return Err(perr(format!("expected two-sided, got {h:?}")));
    }
    arity(h, args, 2)?;
    Ok(TwoSidedTargetSpec::new(
        targets_from_sexp(&args[0])?,
        targets_from_sexp(&args[1])?,
    ))
}

pub fn two_sided_to_sexp(t: &TwoSidedTargetSpec) -> Sexp {
    list(vec![
        atom("two-sided"),
        targets_to_sexp(&t.accept),
        targets_to_sexp(&t.reject),
    ])
}

pub fn parse_program(src: &str) -> Result<GapProgram> {
    program_from_sexp(&parse_sexp(src)?)
}

pub fn parse_targets(src: &str) -> Result<TargetSpec> {
    targets_from_sexp(&parse_sexp(src)?)
}

pub fn parse_two_sided(src: &str) -> Result<TwoSidedTargetSpec> {
    two_sided_from_sexp(&parse_sexp(src)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_small_program() {
        let src = r#"
            ; h(x) = |x| * g(x) - 1
            (sub (mul (const len)
                      (base (machine "g" (max-len 1) (time 1)
                              (tree "" acc)
                              (tree "0" (c acc rej))
                              (tree "1" (c acc acc)))))
                 (const 1))"#;
        let p = parse_program(src).unwrap();
        assert_eq!(p.eval_gap(&Word::from("1")).unwrap(), BigInt::from(1));
        assert_eq!(p.eval_gap(&Word::from("")).unwrap(), BigInt::from(-1));
        let printed = program_to_sexp(&p).to_string();
        assert_eq!(parse_program(&printed).unwrap(), p);
    }

    #[test]
    fn parse_targets_and_fp() {
        let t = parse_targets("(targets length n^2+2 (+ (* 2 idx) (apply (table (default -1) (\"0\" 4)) first)))").unwrap();
        assert_eq!(t.r, NatPoly::power_plus(2));
        assert_eq!(parse_targets(&targets_to_sexp(&t).to_string()).unwrap(), t);
        let two = parse_two_sided(
            "(two-sided (targets length 1 3) (targets length 2 (- idx 1)))",
        )
        .unwrap();
        assert_eq!(parse_two_sided(&two_sided_to_sexp(&two).to_string()).unwrap(), two);
    }

    #[test]
    fn malformed_inputs() {
        for bad in [
            "(add (const 1)",
            "(frobnicate 1)",
            "(const x1)",
            "(prod n sometimes (const 1))",
            "(const 1) extra",
            "\"unterminated",
            "(base (machine \"m\" (max-len 1) (time 0) (tree \"\" acc)))",
        ] {
            assert!(matches!(parse_program(bad), Err(Error::Parse(_))), "{bad}");
        }
    }

    #[test]
    fn strings_escape() {
        let s = Sexp::Str("a\"b\\".into());
        assert_eq!(parse_sexp(&s.to_string()).unwrap(), s);
    }
}
