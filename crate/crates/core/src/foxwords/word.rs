use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::wreath::{GroupParams, WreathElement};

/// A generator of the presentation `<a, x | ...>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    A,
    X,
}

impl Generator {
    pub const ALL: [Generator; 2] = [Generator::A, Generator::X];

    pub fn symbol(&self) -> char {
        match self {
            Generator::A => 'a',
            Generator::X => 'x',
        }
    }

    /// Position in the generator basis: `a` is 0, `x` is 1.
    pub fn index(&self) -> usize {
        match self {
            Generator::A => 0,
            Generator::X => 1,
        }
    }

    pub fn from_index(i: usize) -> Option<Generator> {
        match i {
            0 => Some(Generator::A),
            1 => Some(Generator::X),
            _ => None,
        }
    }

    pub fn image(&self, params: GroupParams) -> WreathElement {
        match self {
            Generator::A => WreathElement::generator_a(params, 0),
            Generator::X => WreathElement::x_pow(params, 1),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

impl FromStr for Generator {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "a" => Ok(Generator::A),
            "x" => Ok(Generator::X),
            other => Err(Error::Parse {
                position: 0,
                message: format!("unknown generator {other:?}, expected a or x"),
            }),
        }
    }
}

/// A generator or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    pub generator: Generator,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: Generator, exponent: i8) -> Letter {
        assert!(
            exponent == 1 || exponent == -1,
            "letter exponent must be +-1"
        );
        Letter {
            generator,
            inverse: exponent < 0,
        }
    }

    pub fn exponent(&self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    pub fn inverted(&self) -> Letter {
        Letter {
            generator: self.generator,
            inverse: !self.inverse,
        }
    }

    pub fn image(&self, params: GroupParams) -> WreathElement {
        let g = self.generator.image(params);
        if self.inverse {
            g.inverse()
        } else {
            g
        }
    }
}

/// A word in `a^{+-1}, x^{+-1}`. Not reduced unless [`reduce`](Self::reduce)d.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct FreeWord(Vec<Letter>);

impl FreeWord {
    pub fn empty() -> Self {
        FreeWord(Vec::new())
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        FreeWord(letters)
    }

    pub fn generator(g: Generator) -> Self {
        FreeWord(vec![Letter::new(g, 1)])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &FreeWord) -> FreeWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        FreeWord(v)
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord(self.0.iter().rev().map(Letter::inverted).collect())
    }

    pub fn pow(&self, k: i64) -> FreeWord {
        let unit = if k < 0 { self.inverse() } else { self.clone() };
        let mut v = Vec::with_capacity(unit.len() * k.unsigned_abs() as usize);
        for _ in 0..k.unsigned_abs() {
            v.extend_from_slice(&unit.0);
        }
        FreeWord(v)
    }

    /// `[u, v] = u v u^-1 v^-1`.
    pub fn commutator(u: &FreeWord, v: &FreeWord) -> FreeWord {
        u.concat(v).concat(&u.inverse()).concat(&v.inverse())
    }

    /// Free reduction: cancels adjacent `s s^-1` pairs until none remain.
    pub fn reduce(&self) -> FreeWord {
        let mut out: Vec<Letter> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            if out.last() == Some(&l.inverted()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        FreeWord(out)
    }

    pub fn is_reduced(&self) -> bool {
        self.0.windows(2).all(|w| w[0] != w[1].inverted())
    }

    /// Image in `Z/dZ wr Z`.
    pub fn evaluate(&self, params: GroupParams) -> WreathElement {
        self.0
            .iter()
            .fold(WreathElement::identity(params), |acc, l| {
                acc.mul_unchecked(&l.image(params))
            })
    }

    /// Images of all prefixes `w_0 = e, w_1, ..., w_n = w`.
    pub fn prefix_images(&self, params: GroupParams) -> Vec<WreathElement> {
        let mut out = Vec::with_capacity(self.0.len() + 1);
        let mut acc = WreathElement::identity(params);
        out.push(acc.clone());
        for l in &self.0 {
            acc = acc.mul_unchecked(&l.image(params));
            out.push(acc.clone());
        }
        out
    }

    /// The relator `r_0 = a^d` for `index == 0` and `r_l = [a, x^l a x^-l]`
    /// otherwise.
    pub fn relator(params: GroupParams, index: usize) -> FreeWord {
        let a = FreeWord::generator(Generator::A);
        if index == 0 {
            return a.pow(params.d() as i64);
        }
        let xl = FreeWord::generator(Generator::X).pow(index as i64);
        let conj = xl.concat(&a).concat(&xl.inverse());
        FreeWord::commutator(&a, &conj)
    }
}

/// Prints maximal runs of one letter as a power, separated by spaces:
/// `a^2 x a^-1`; the empty word prints as `e`.
impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "e");
        }
        let mut i = 0;
        let mut first = true;
        while i < self.0.len() {
            let l = self.0[i];
            let mut run = 1;
            while i + run < self.0.len() && self.0[i + run] == l {
                run += 1;
            }
            if !first {
                write!(f, " ")?;
            }
            first = false;
            let exp = run as i64 * l.exponent();
            if exp == 1 {
                write!(f, "{}", l.generator)?;
            } else {
                write!(f, "{}^{}", l.generator, exp)?;
            }
            i += run;
        }
        Ok(())
    }
}

impl FromStr for FreeWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        super::parser::parse_word(s)
    }
}
