//! Symbolic observables on the phase space of a relativistic point particle.
//!
//! Observables are real functions of the canonical coordinates `x1..x3`,
//! `p1..p3`, the ambient spin components `s1..s3` (with `s = S s_hat` on the
//! sphere of radius `S`), and the constants `m`, `S`, `c`. The expression
//! language supports `+ - * /`, integer powers `^` (right-associative) and
//! `sqrt`; see [`parser`] for the grammar.
//!
//! The Poisson bracket is canonical in `(x, p)` and rigid-rotor in the spin
//! sector:
//!
//! ```text
//! {f, g} = sum_a (df/dx_a dg/dp_a - df/dp_a dg/dx_a) + s . (grad_s f x grad_s g)
//! ```
//!
//! The spin term uses ambient derivatives; its value on the sphere `|s| = S`
//! does not depend on how an observable is extended off the sphere.

pub mod parser;

use crate::minkowski::levi_civita3;
use std::fmt;
use thiserror::Error;

/// A phase-space symbol. Spatial indices are 0-based internally and 1-based in
/// the surface syntax (`X(0)` prints as `x1`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Symbol {
    /// Position component `x1..x3`.
    X(u8),
    /// Momentum component `p1..p3`.
    P(u8),
    /// Ambient spin component `s1..s3` of `s = S s_hat`.
    S(u8),
    /// Rest mass `m`.
    Mass,
    /// Spin magnitude `S`.
    SpinMag,
    /// Speed of light `c`.
    LightSpeed,
}

impl Symbol {
    /// Every valid symbol, in the order used for error listings.
    pub const ALL: [Symbol; 12] = [
        Symbol::X(0),
        Symbol::X(1),
        Symbol::X(2),
        Symbol::P(0),
        Symbol::P(1),
        Symbol::P(2),
        Symbol::S(0),
        Symbol::S(1),
        Symbol::S(2),
        Symbol::Mass,
        Symbol::SpinMag,
        Symbol::LightSpeed,
    ];

    pub fn name(&self) -> String {
        match self {
            Symbol::X(a) => format!("x{}", a + 1),
            Symbol::P(a) => format!("p{}", a + 1),
            Symbol::S(a) => format!("s{}", a + 1),
            Symbol::Mass => "m".to_string(),
            Symbol::SpinMag => "S".to_string(),
            Symbol::LightSpeed => "c".to_string(),
        }
    }

    pub fn from_name(name: &str) -> Option<Symbol> {
        Symbol::ALL.into_iter().find(|s| s.name() == name)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// Numeric values for every symbol, the data needed to evaluate expressions.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EvalContext {
    pub x: [f64; 3],
    pub p: [f64; 3],
    /// Ambient spin vector `s = S s_hat` (zero for spinless states).
    pub s: [f64; 3],
    pub m: f64,
    pub spin: f64,
    pub c: f64,
}

impl EvalContext {
    pub fn lookup(&self, sym: Symbol) -> f64 {
        match sym {
            Symbol::X(a) => self.x[a as usize],
            Symbol::P(a) => self.p[a as usize],
            Symbol::S(a) => self.s[a as usize],
            Symbol::Mass => self.m,
            Symbol::SpinMag => self.spin,
            Symbol::LightSpeed => self.c,
        }
    }

    fn with_symbol(&self, sym: Symbol, value: f64) -> EvalContext {
        let mut out = *self;
        match sym {
            Symbol::X(a) => out.x[a as usize] = value,
            Symbol::P(a) => out.p[a as usize] = value,
            Symbol::S(a) => out.s[a as usize] = value,
            Symbol::Mass => out.m = value,
            Symbol::SpinMag => out.spin = value,
            Symbol::LightSpeed => out.c = value,
        }
        out
    }
}

/// Domain failure while evaluating an expression.
#[derive(Clone, Copy, Debug, Error, PartialEq)]
pub enum EvalError {
    #[error("division by zero (zero raised to the negative power {0})")]
    DivisionByZero(i32),
    #[error("square root of negative value {0}")]
    SqrtOfNegative(f64),
}

/// A symbolic observable, stored in a small canonical form: sums and products
/// are n-ary, subtraction is a `(-1)` factor, division is a `^(-1)` power.
#[derive(Clone, Debug, PartialEq)]
pub enum Expression {
    Const(f64),
    Sym(Symbol),
    Add(Vec<Expression>),
    Mul(Vec<Expression>),
    Powi(Box<Expression>, i32),
    Sqrt(Box<Expression>),
}

impl Expression {
    pub const ZERO: Expression = Expression::Const(0.0);
    pub const ONE: Expression = Expression::Const(1.0);

    pub fn constant(c: f64) -> Expression {
        Expression::Const(c)
    }

    pub fn symbol(sym: Symbol) -> Expression {
        Expression::Sym(sym)
    }

    pub fn sqrt(e: Expression) -> Expression {
        Expression::Sqrt(Box::new(e))
    }

    pub fn powi(e: Expression, k: i32) -> Expression {
        Expression::Powi(Box::new(e), k)
    }

    pub fn neg(e: Expression) -> Expression {
        Expression::Mul(vec![Expression::Const(-1.0), e])
    }

    /// Sum of any number of terms (empty sums are zero).
    pub fn sum(terms: Vec<Expression>) -> Expression {
        Expression::Add(terms).simplified()
    }

    /// Product of any number of factors (empty products are one).
    pub fn product(factors: Vec<Expression>) -> Expression {
        Expression::Mul(factors).simplified()
    }

    /// Evaluate to a number; domain errors are reported, never silently NaN.
    pub fn evaluate(&self, ctx: &EvalContext) -> Result<f64, EvalError> {
        match self {
            Expression::Const(c) => Ok(*c),
            Expression::Sym(s) => Ok(ctx.lookup(*s)),
            Expression::Add(terms) => {
                let mut acc = 0.0;
                for t in terms {
                    acc += t.evaluate(ctx)?;
                }
                Ok(acc)
            }
            Expression::Mul(factors) => {
                let mut acc = 1.0;
                for f in factors {
                    acc *= f.evaluate(ctx)?;
                }
                Ok(acc)
            }
            Expression::Powi(base, k) => {
                let b = base.evaluate(ctx)?;
                if b == 0.0 && *k < 0 {
                    return Err(EvalError::DivisionByZero(*k));
                }
                Ok(b.powi(*k))
            }
            Expression::Sqrt(inner) => {
                let v = inner.evaluate(ctx)?;
                if v < 0.0 {
                    return Err(EvalError::SqrtOfNegative(v));
                }
                Ok(v.sqrt())
            }
        }
    }

    /// Partial derivative with respect to `sym`. The phase-space coordinates
    /// and the constants `m`, `S`, `c` are mutually independent, so any symbol
    /// other than `sym` differentiates to zero.
    pub fn differentiate(&self, sym: Symbol) -> Expression {
        self.diff_raw(sym).simplified()
    }

    fn diff_raw(&self, sym: Symbol) -> Expression {
        match self {
            Expression::Const(_) => Expression::ZERO,
            Expression::Sym(s) => {
                if *s == sym {
                    Expression::ONE
                } else {
                    Expression::ZERO
                }
            }
            Expression::Add(terms) => {
                Expression::Add(terms.iter().map(|t| t.diff_raw(sym)).collect())
            }
            Expression::Mul(factors) => {
                let mut terms = Vec::with_capacity(factors.len());
                for i in 0..factors.len() {
                    let mut prod = Vec::with_capacity(factors.len());
                    for (j, f) in factors.iter().enumerate() {
                        if i == j {
                            prod.push(f.diff_raw(sym));
                        } else {
                            prod.push(f.clone());
                        }
                    }
                    terms.push(Expression::Mul(prod));
                }
                Expression::Add(terms)
            }
            Expression::Powi(base, k) => {
                // d(b^k) = k b^(k-1) db
                Expression::Mul(vec![
                    Expression::Const(f64::from(*k)),
                    Expression::Powi(base.clone(), k - 1),
                    base.diff_raw(sym),
                ])
            }
            Expression::Sqrt(inner) => {
                // d sqrt(v) = dv / (2 sqrt(v))
                Expression::Mul(vec![
                    Expression::Const(0.5),
                    inner.diff_raw(sym),
                    Expression::Powi(Box::new(Expression::Sqrt(inner.clone())), -1),
                ])
            }
        }
    }

    /// Conservative simplification: constant folding, dropping additive zeros
    /// and multiplicative ones, flattening nested sums/products. No reordering
    /// and no like-term collection, so the result stays structurally close to
    /// the input.
    pub fn simplified(&self) -> Expression {
        match self {
            Expression::Const(_) | Expression::Sym(_) => self.clone(),
            Expression::Add(terms) => {
                let mut flat = Vec::new();
                let mut const_sum = 0.0;
                for t in terms {
                    match t.simplified() {
                        Expression::Const(c) => const_sum += c,
                        Expression::Add(inner) => {
                            for e in inner {
                                match e {
                                    Expression::Const(c) => const_sum += c,
                                    other => flat.push(other),
                                }
                            }
                        }
                        other => flat.push(other),
                    }
                }
                if const_sum != 0.0 || flat.is_empty() {
                    flat.push(Expression::Const(const_sum));
                }
                if flat.len() == 1 {
                    flat.pop().unwrap()
                } else {
                    Expression::Add(flat)
                }
            }
            Expression::Mul(factors) => {
                let mut flat = Vec::new();
                let mut const_prod = 1.0;
                for f in factors {
                    match f.simplified() {
                        Expression::Const(c) => const_prod *= c,
                        Expression::Mul(inner) => {
                            for e in inner {
                                match e {
                                    Expression::Const(c) => const_prod *= c,
                                    other => flat.push(other),
                                }
                            }
                        }
                        other => flat.push(other),
                    }
                }
                if const_prod == 0.0 {
                    return Expression::ZERO;
                }
                if const_prod != 1.0 || flat.is_empty() {
                    flat.insert(0, Expression::Const(const_prod));
                }
                if flat.len() == 1 {
                    flat.pop().unwrap()
                } else {
                    Expression::Mul(flat)
                }
            }
            Expression::Powi(base, k) => {
                let b = base.simplified();
                match (b, *k) {
                    (_, 0) => Expression::ONE,
                    (b, 1) => b,
                    // fold constants, except 0^(-k) which must stay a
                    // run-time domain error rather than become infinity
                    (Expression::Const(c), k) if c != 0.0 || k > 0 => {
                        Expression::Const(c.powi(k))
                    }
                    (b, k) => Expression::Powi(Box::new(b), k),
                }
            }
            Expression::Sqrt(inner) => {
                let v = inner.simplified();
                match v {
                    Expression::Const(c) if c >= 0.0 => Expression::Const(c.sqrt()),
                    other => Expression::Sqrt(Box::new(other)),
                }
            }
        }
    }

    /// Number of nodes, a size diagnostic for tests.
    pub fn node_count(&self) -> usize {
        match self {
            Expression::Const(_) | Expression::Sym(_) => 1,
            Expression::Add(v) | Expression::Mul(v) => {
                1 + v.iter().map(Expression::node_count).sum::<usize>()
            }
            Expression::Powi(b, _) => 1 + b.node_count(),
            Expression::Sqrt(b) => 1 + b.node_count(),
        }
    }
}

impl std::ops::Add for Expression {
    type Output = Expression;
    fn add(self, rhs: Expression) -> Expression {
        Expression::Add(vec![self, rhs])
    }
}

impl std::ops::Sub for Expression {
    type Output = Expression;
    fn sub(self, rhs: Expression) -> Expression {
        Expression::Add(vec![self, Expression::neg(rhs)])
    }
}

impl std::ops::Mul for Expression {
    type Output = Expression;
    fn mul(self, rhs: Expression) -> Expression {
        Expression::Mul(vec![self, rhs])
    }
}

impl std::ops::Div for Expression {
    type Output = Expression;
    fn div(self, rhs: Expression) -> Expression {
        Expression::Mul(vec![self, Expression::Powi(Box::new(rhs), -1)])
    }
}

impl std::ops::Neg for Expression {
    type Output = Expression;
    fn neg(self) -> Expression {
        Expression::neg(self)
    }
}

/// Canonical Poisson bracket plus the rigid spin bracket:
/// `{f, g} = sum_a (df/dx_a dg/dp_a - df/dp_a dg/dx_a)
///           + sum_{abc} eps_{abc} s_a df/ds_b dg/ds_c`.
///
/// The result is a simplified [`Expression`]; equality of observables is
/// decided by evaluation, not by syntactic shape.
pub fn poisson_bracket(f: &Expression, g: &Expression) -> Expression {
    let mut terms = Vec::new();
    for a in 0..3u8 {
        let fx = f.differentiate(Symbol::X(a));
        let gp = g.differentiate(Symbol::P(a));
        if fx != Expression::ZERO && gp != Expression::ZERO {
            terms.push(fx * gp);
        }
        let fp = f.differentiate(Symbol::P(a));
        let gx = g.differentiate(Symbol::X(a));
        if fp != Expression::ZERO && gx != Expression::ZERO {
            terms.push(Expression::neg(fp * gx));
        }
    }
    let fs: [Expression; 3] = [0u8, 1, 2].map(|b| f.differentiate(Symbol::S(b)));
    let gs: [Expression; 3] = [0u8, 1, 2].map(|c| g.differentiate(Symbol::S(c)));
    for a in 0..3 {
        for b in 0..3 {
            for c in 0..3 {
                let eps = levi_civita3(a, b, c);
                if eps != 0 && fs[b] != Expression::ZERO && gs[c] != Expression::ZERO {
                    terms.push(Expression::Mul(vec![
                        Expression::Const(f64::from(eps)),
                        Expression::Sym(Symbol::S(a as u8)),
                        fs[b].clone(),
                        gs[c].clone(),
                    ]));
                }
            }
        }
    }
    Expression::Add(terms).simplified()
}

/// Central finite-difference partial derivative with step
/// `h = 1e-6 * max(1, |coordinate|)`, the reference used to cross-check
/// [`Expression::differentiate`].
pub fn numeric_partial(
    f: &Expression,
    ctx: &EvalContext,
    sym: Symbol,
) -> Result<f64, EvalError> {
    let v = ctx.lookup(sym);
    let h = 1e-6 * v.abs().max(1.0);
    let plus = f.evaluate(&ctx.with_symbol(sym, v + h))?;
    let minus = f.evaluate(&ctx.with_symbol(sym, v - h))?;
    Ok((plus - minus) / (2.0 * h))
}

impl fmt::Display for Expression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_with_precedence(self, f, 0)
    }
}

/// Precedence levels: 0 sum, 1 product, 2 power/atom.
fn write_with_precedence(
    e: &Expression,
    f: &mut fmt::Formatter<'_>,
    parent: u8,
) -> fmt::Result {
    let prec = match e {
        Expression::Add(_) => 0,
        Expression::Mul(_) => 1,
        _ => 2,
    };
    let need_parens = prec < parent
        || matches!(e, Expression::Const(c) if *c < 0.0 && parent > 0);
    if need_parens {
        f.write_str("(")?;
    }
    match e {
        Expression::Const(c) => {
            if c.fract() == 0.0 && c.abs() < 1e15 {
                write!(f, "{}", *c as i64)?;
            } else {
                write!(f, "{c}")?;
            }
        }
        Expression::Sym(s) => write!(f, "{s}")?,
        Expression::Add(terms) => {
            for (i, t) in terms.iter().enumerate() {
                if i > 0 {
                    f.write_str(" + ")?;
                }
                write_with_precedence(t, f, 1)?;
            }
        }
        Expression::Mul(factors) => {
            for (i, x) in factors.iter().enumerate() {
                if i > 0 {
                    f.write_str(" * ")?;
                }
                write_with_precedence(x, f, 2)?;
            }
        }
        Expression::Powi(base, k) => {
            write_with_precedence(base, f, 2)?;
            if *k < 0 {
                write!(f, "^({k})")?;
            } else {
                write!(f, "^{k}")?;
            }
        }
        Expression::Sqrt(inner) => {
            f.write_str("sqrt(")?;
            write_with_precedence(inner, f, 0)?;
            f.write_str(")")?;
        }
    }
    if need_parens {
        f.write_str(")")?;
    }
    Ok(())
}
