//! Integrands as closed expression trees, evaluated exactly at integer points.
//!
//! Prefix syntax accepted by [`parse_integrand`]:
//!
//! ```text
//! x                      the variable
//! c:1/2, 3, -2/5         rational constants
//! lambda                 the bound λ (when one is supplied)
//! pow(B, x)              B^x for a constant p-adic unit B
//! pow(f, n)              f^n, n a nonnegative integer
//! sin(a) cos(a) exp(a)   sin(a·x), cos(a·x), e^(a·x), v_p(a) >= 1
//! log(B)                 the constant log_p(B)
//! chi(d:i)               the i-th Dirichlet character mod d
//! qbinom(n, q)           the q-binomial [x choose n]_q
//! add(f, g, ...)  mul(f, g, ...)  sub(f, g)  neg(f)
//! shift(f, n)            x ↦ f(x + n)
//! ```

use std::fmt;

use crate::characters::{characters_mod, DirichletCharacter};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::padic::{padic_character_value, padic_elementary, ElementaryFunction, PadicContext, PadicNumber};
use crate::rational::{format_rational, int, parse_rational, rational_valuation};
use crate::Rational;

#[derive(Debug, Clone, PartialEq)]
pub enum Integrand {
    Const(Rational),
    /// `log_p(λ) = log(λ^{p-1}) / (p-1)` for a unit λ.
    LogConst(Rational),
    X,
    Power(Box<Integrand>, u32),
    /// `λ^x`.
    Exponential(Rational),
    Character(DirichletCharacter),
    Sin(Rational),
    Cos(Rational),
    Exp(Rational),
    QBinomial {
        n: u32,
        q: Rational,
    },
    Product(Vec<Integrand>),
    Sum(Vec<Integrand>),
    Shift(Box<Integrand>, i64),
}

fn unit_check(b: &Rational, p: u64, what: &str) -> Result<()> {
    if rational_valuation(b, p) != Some(0) {
        return Err(Error::Domain(format!("{what} needs a p-adic unit, got {b} (p = {p})")));
    }
    Ok(())
}

fn small_check(a: &Rational, p: u64) -> Result<()> {
    if rational_valuation(a, p).is_some_and(|v| v < 1) {
        return Err(Error::Domain(format!("trigonometric argument needs v_p(a) >= 1, got a = {a} (p = {p})")));
    }
    Ok(())
}

fn log_const(b: &Rational, ctx: &PadicContext) -> Result<PadicNumber> {
    let p = ctx.p();
    unit_check(b, p, "log")?;
    let base = ctx.from_rational(b).pow_u(p - 1);
    let l = padic_elementary(ElementaryFunction::Log, &base, ctx)?;
    Ok(l * ctx.from_rational(&Rational::new(1.into(), ((p - 1) as i64).into())))
}

/// `[x choose n]_q = Π_{i<n} (1 - q^{x-i}) / (1 - q^{i+1})`.
fn q_binomial(n: u32, q: &Rational, x: i64, ctx: &PadicContext) -> Result<PadicNumber> {
    let p = ctx.p();
    let vq = match rational_valuation(&(q.clone() - int(1)), p) {
        Some(v) if v >= 1 => v as u32,
        _ => return Err(Error::Domain(format!("q-binomial needs q ≡ 1 (mod p), q ≠ 1, got q = {q}"))),
    };
    if (0..n as i64).contains(&x) {
        return Ok(ctx.zero());
    }
    let loss: u32 = (1..=n as u64).map(|i| vq + crate::rational::int_valuation(&i.into(), p) as u32).sum();
    let wctx = ctx.widened(loss);
    let qp = wctx.from_rational(q);
    let mut acc = wctx.one();
    for i in 0..n as i64 {
        let num = wctx.one() - qp.pow_i(x - i).expect("q is a unit");
        let den = wctx.one() - qp.pow_u((i + 1) as u64);
        acc = acc * num / den;
    }
    Ok(acc.truncate(ctx.precision() as i64))
}

impl Integrand {
    pub fn x_pow(n: u32) -> Self {
        Self::Power(Box::new(Self::X), n)
    }

    pub fn constant(r: Rational) -> Self {
        Self::Const(r)
    }

    /// `f_c(x) = f(x + c)`.
    pub fn shifted(&self, c: i64) -> Self {
        Self::Shift(Box::new(self.clone()), c)
    }

    pub fn has_qbinomial(&self) -> bool {
        match self {
            Self::QBinomial { .. } => true,
            Self::Power(f, _) | Self::Shift(f, _) => f.has_qbinomial(),
            Self::Product(fs) | Self::Sum(fs) => fs.iter().any(Self::has_qbinomial),
            _ => false,
        }
    }

    /// Exact value at the integer `x`, to the precision of `ctx`.
    pub fn eval(&self, x: i64, ctx: &PadicContext) -> Result<PadicNumber> {
        let p = ctx.p();
        Ok(match self {
            Self::Const(r) => ctx.from_rational(r),
            Self::LogConst(b) => log_const(b, ctx)?,
            Self::X => ctx.from_int(x),
            Self::Power(f, n) => f.eval(x, ctx)?.pow_u(*n as u64),
            Self::Exponential(b) => {
                unit_check(b, p, "λ^x")?;
                ctx.from_rational(b).pow_i(x).expect("unit base")
            }
            Self::Character(chi) => padic_character_value(chi, x, ctx)?,
            Self::Sin(a) | Self::Cos(a) | Self::Exp(a) => {
                small_check(a, p)?;
                let kind = match self {
                    Self::Sin(_) => ElementaryFunction::Sin,
                    Self::Cos(_) => ElementaryFunction::Cos,
                    _ => ElementaryFunction::Exp,
                };
                padic_elementary(kind, &ctx.from_rational(&(a.clone() * int(x))), ctx)?
            }
            Self::QBinomial { n, q } => q_binomial(*n, q, x, ctx)?,
            Self::Product(fs) => {
                let mut acc = ctx.one();
                for f in fs {
                    acc = acc * f.eval(x, ctx)?;
                }
                acc
            }
            Self::Sum(fs) => {
                let mut acc = ctx.zero();
                for f in fs {
                    acc = acc + f.eval(x, ctx)?;
                }
                acc
            }
            Self::Shift(f, c) => f.eval(x + c, ctx)?,
        }
        .truncate(ctx.precision() as i64))
    }

    /// Symbolic derivative; undefined for character and q-binomial factors.
    pub fn derivative(&self) -> Result<Self> {
        let zero = || Self::Const(int(0));
        Ok(match self {
            Self::Const(_) | Self::LogConst(_) => zero(),
            Self::X => Self::Const(int(1)),
            Self::Power(_, 0) => zero(),
            Self::Power(f, n) => {
                Self::Product(vec![Self::Const(int(*n as i64)), Self::Power(f.clone(), n - 1), f.derivative()?])
            }
            Self::Exponential(b) => Self::Product(vec![Self::LogConst(b.clone()), self.clone()]),
            Self::Sin(a) => Self::Product(vec![Self::Const(a.clone()), Self::Cos(a.clone())]),
            Self::Cos(a) => Self::Product(vec![Self::Const(-a.clone()), Self::Sin(a.clone())]),
            Self::Exp(a) => Self::Product(vec![Self::Const(a.clone()), self.clone()]),
            Self::Character(_) => return Err(Error::Unsupported("character factors are not differentiable".into())),
            Self::QBinomial { .. } => {
                return Err(Error::Unsupported("q-binomial factors are not differentiated symbolically".into()))
            }
            Self::Product(fs) => {
                let mut terms = Vec::with_capacity(fs.len());
                for i in 0..fs.len() {
                    let mut factors = fs.clone();
                    factors[i] = fs[i].derivative()?;
                    terms.push(Self::Product(factors));
                }
                Self::Sum(terms)
            }
            Self::Sum(fs) => Self::Sum(fs.iter().map(Self::derivative).collect::<Result<_>>()?),
            Self::Shift(f, c) => Self::Shift(Box::new(f.derivative()?), *c),
        })
    }
}

fn write_list(f: &mut fmt::Formatter<'_>, name: &str, items: &[Integrand]) -> fmt::Result {
    write!(f, "{name}(")?;
    for (i, it) in items.iter().enumerate() {
        if i > 0 {
            write!(f, ", ")?;
        }
        write!(f, "{it}")?;
    }
    write!(f, ")")
}

fn character_index(chi: &DirichletCharacter) -> Option<usize> {
    characters_mod(chi.modulus()).ok()?.iter().position(|c| c == chi)
}

impl fmt::Display for Integrand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = format_rational;
        match self {
            Self::Const(c) => write!(f, "c:{}", r(c)),
            Self::LogConst(b) => write!(f, "log(c:{})", r(b)),
            Self::X => write!(f, "x"),
            Self::Power(g, n) => write!(f, "pow({g}, {n})"),
            Self::Exponential(b) => write!(f, "pow(c:{}, x)", r(b)),
            Self::Character(chi) => match character_index(chi) {
                Some(i) => write!(f, "chi({}:{i})", chi.modulus()),
                None => write!(f, "chi({}:?)", chi.modulus()),
            },
            Self::Sin(a) => write!(f, "sin(c:{})", r(a)),
            Self::Cos(a) => write!(f, "cos(c:{})", r(a)),
            Self::Exp(a) => write!(f, "exp(c:{})", r(a)),
            Self::QBinomial { n, q } => write!(f, "qbinom({n}, c:{})", r(q)),
            Self::Product(fs) => write_list(f, "mul", fs),
            Self::Sum(fs) => write_list(f, "add", fs),
            Self::Shift(g, c) => write!(f, "shift({g}, {c})"),
        }
    }
}

enum Node {
    Atom(String),
    Call(String, Vec<Node>),
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("integrand: {msg} at offset {} in {:?}", self.pos, self.src))
    }

    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += self.src[self.pos..].chars().next().map_or(1, char::len_utf8);
        }
    }

    fn node(&mut self) -> Result<Node> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.src[self.pos..];
        let len = rest.find(['(', ')', ',']).unwrap_or(rest.len());
        self.pos += len;
        let word = self.src[start..self.pos].trim().to_string();
        if word.is_empty() {
            return Err(self.err("expected a term"));
        }
        self.skip_ws();
        if !self.src[self.pos..].starts_with('(') {
            return Ok(Node::Atom(word));
        }
        self.pos += 1;
        let mut args = Vec::new();
        loop {
            args.push(self.node()?);
            self.skip_ws();
            match self.src[self.pos..].chars().next() {
                Some(',') => self.pos += 1,
                Some(')') => {
                    self.pos += 1;
                    break;
                }
                _ => return Err(self.err("expected ',' or ')'")),
            }
        }
        Ok(Node::Call(word, args))
    }
}

struct Builder<'a> {
    lambda: Option<&'a Rational>,
}

impl Builder<'_> {
    fn constant(&self, node: &Node) -> Result<Rational> {
        match self.build(node)? {
            Integrand::Const(c) => Ok(c),
            other => Err(Error::Parse(format!("expected a constant, got {other}"))),
        }
    }

    fn integer(&self, node: &Node) -> Result<i64> {
        let c = self.constant(node)?;
        if !c.is_integer() {
            return Err(Error::Parse(format!("expected an integer, got {c}")));
        }
        i64::try_from(c.to_integer()).map_err(|_| Error::Parse(format!("integer out of range: {c}")))
    }

    fn build(&self, node: &Node) -> Result<Integrand> {
        match node {
            Node::Atom(w) => match w.as_str() {
                "x" => Ok(Integrand::X),
                "lambda" | "λ" => self
                    .lambda
                    .cloned()
                    .map(Integrand::Const)
                    .ok_or_else(|| Error::Parse("'lambda' used but no λ was supplied".into())),
                _ => Ok(Integrand::Const(parse_rational(w.strip_prefix("c:").unwrap_or(w))?)),
            },
            Node::Call(name, args) => self.call(name, args),
        }
    }

    fn call(&self, name: &str, args: &[Node]) -> Result<Integrand> {
        let arity = |n: usize| {
            if args.len() == n {
                Ok(())
            } else {
                Err(Error::Parse(format!("{name} takes {n} argument(s), got {}", args.len())))
            }
        };
        match name {
            "add" => Ok(Integrand::Sum(args.iter().map(|a| self.build(a)).collect::<Result<_>>()?)),
            "mul" => Ok(Integrand::Product(args.iter().map(|a| self.build(a)).collect::<Result<_>>()?)),
            "sub" => {
                arity(2)?;
                Ok(Integrand::Sum(vec![
                    self.build(&args[0])?,
                    Integrand::Product(vec![Integrand::Const(int(-1)), self.build(&args[1])?]),
                ]))
            }
            "neg" => {
                arity(1)?;
                Ok(Integrand::Product(vec![Integrand::Const(int(-1)), self.build(&args[0])?]))
            }
            "pow" => {
                arity(2)?;
                if matches!(&args[1], Node::Atom(w) if w == "x") {
                    return Ok(Integrand::Exponential(self.constant(&args[0])?));
                }
                let n = self.integer(&args[1])?;
                let n = u32::try_from(n).map_err(|_| Error::Parse(format!("exponent must be nonnegative, got {n}")))?;
                Ok(Integrand::Power(Box::new(self.build(&args[0])?), n))
            }
            "sin" | "cos" | "exp" | "log" => {
                arity(1)?;
                let a = self.constant(&args[0])?;
                Ok(match name {
                    "sin" => Integrand::Sin(a),
                    "cos" => Integrand::Cos(a),
                    "exp" => Integrand::Exp(a),
                    _ => Integrand::LogConst(a),
                })
            }
            "chi" => {
                arity(1)?;
                let Node::Atom(spec) = &args[0] else {
                    return Err(Error::Parse("chi expects d:index".into()));
                };
                Ok(Integrand::Character(parse_character(spec)?))
            }
            "qbinom" => {
                arity(2)?;
                let n = self.integer(&args[0])?;
                let n =
                    u32::try_from(n).map_err(|_| Error::Parse(format!("qbinom order must be nonnegative, got {n}")))?;
                Ok(Integrand::QBinomial { n, q: self.constant(&args[1])? })
            }
            "shift" => {
                arity(2)?;
                Ok(Integrand::Shift(Box::new(self.build(&args[0])?), self.integer(&args[1])?))
            }
            _ => Err(Error::Parse(format!("unknown integrand function {name:?}"))),
        }
    }
}

/// `"d:i"`: the `i`-th character in [`characters_mod`]`(d)`.
pub fn parse_character(spec: &str) -> Result<DirichletCharacter> {
    let (d, i) =
        spec.split_once(':').ok_or_else(|| Error::Parse(format!("character must be d:index, got {spec:?}")))?;
    let d: u64 = d.trim().parse().map_err(|_| Error::Parse(format!("bad character modulus {d:?}")))?;
    let i: usize = i.trim().parse().map_err(|_| Error::Parse(format!("bad character index {i:?}")))?;
    let all = characters_mod(d)?;
    let n = all.len();
    all.into_iter()
        .nth(i)
        .ok_or_else(|| Error::Usage(format!("character index {i} out of range: there are {n} characters mod {d}")))
}

pub fn parse_integrand(src: &str, lambda: Option<&Rational>) -> Result<Integrand> {
    let mut parser = Parser { src, pos: 0 };
    let node = parser.node()?;
    parser.skip_ws();
    if parser.pos != src.len() {
        return Err(parser.err("trailing input"));
    }
    Builder { lambda }.build(&node)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn ctx(p: u64, m: u32) -> PadicContext {
        PadicContext::new(p, m).unwrap()
    }

    #[test]
    fn parses_the_documented_example() {
        let f = parse_integrand("mul(pow(lambda,x), pow(add(x,c:1/2), 3))", Some(&int(2))).unwrap();
        let c = ctx(5, 8);
        // 2^3 * (3 + 1/2)^3
        let expect = int(8) * rat(7, 2) * rat(7, 2) * rat(7, 2);
        assert_eq!(f.eval(3, &c).unwrap(), c.from_rational(&expect));
    }

    #[test]
    fn display_round_trips() {
        let srcs = [
            "x",
            "add(pow(x, 3), mul(c:2, x))",
            "mul(pow(c:6, x), chi(3:1), pow(x, 2))",
            "shift(sin(c:5), 2)",
            "qbinom(2, c:6)",
            "sub(cos(c:3), exp(c:-3))",
            "log(c:2)",
        ];
        for s in srcs {
            let f = parse_integrand(s, None).unwrap();
            assert_eq!(parse_integrand(&f.to_string(), None).unwrap(), f, "{s}");
        }
    }

    #[test]
    fn parse_errors() {
        for s in ["", "foo(x)", "pow(x)", "add(x,", "lambda", "pow(x, -1)", "chi(4)", "x y)"] {
            assert!(parse_integrand(s, None).is_err(), "{s}");
        }
    }

    #[test]
    fn derivative_at_zero() {
        let c = ctx(5, 8);
        let cases = [
            ("add(pow(x, 3), mul(c:2, x))", int(2)),
            ("mul(x, x, x)", int(0)),
            ("shift(pow(x, 2), 3)", int(6)),
            ("sin(c:5)", int(5)),
            ("cos(c:5)", int(0)),
        ];
        for (s, d0) in cases {
            let f = parse_integrand(s, None).unwrap();
            assert!(f.derivative().unwrap().eval(0, &c).unwrap().agreement(&c.from_rational(&d0)) >= 8, "{s}");
        }
        let exp_d = parse_integrand("exp(c:5)", None).unwrap().derivative().unwrap().eval(0, &c).unwrap();
        assert!(exp_d.agreement(&c.from_int(5)) >= 8);
        assert!(parse_integrand("chi(3:1)", None).unwrap().derivative().is_err());
    }

    #[test]
    fn log_const_of_principal_unit() {
        let c = ctx(5, 8);
        let l = Integrand::LogConst(int(6)).eval(0, &c).unwrap();
        let direct = padic_elementary(ElementaryFunction::Log, &c.from_int(6), &c).unwrap();
        assert!(l.agreement(&direct) >= 7);
    }

    #[test]
    fn q_binomial_values() {
        let c = ctx(5, 8);
        let q = int(6);
        let f = Integrand::QBinomial { n: 2, q: q.clone() };
        assert!(Field::is_zero(&f.eval(1, &c).unwrap()));
        // [3 choose 2]_q = 1 + q + q^2
        assert_eq!(f.eval(3, &c).unwrap(), c.from_int(1 + 6 + 36));
        let g = Integrand::QBinomial { n: 0, q };
        assert_eq!(g.eval(17, &c).unwrap(), c.one());
    }

    #[test]
    fn domain_errors() {
        let c = ctx(5, 6);
        assert!(matches!(Integrand::Sin(int(2)).eval(1, &c), Err(Error::Domain(_))));
        assert!(matches!(Integrand::Exponential(int(5)).eval(1, &c), Err(Error::Domain(_))));
        assert!(matches!(Integrand::QBinomial { n: 1, q: int(2) }.eval(3, &c), Err(Error::Domain(_))));
    }
}
