use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Signed, Zero};

use super::field::{raw_is_zero, Field};
use super::Rational;
use crate::error::{Error, Result};

/// An element of a tower level, stored reduced in flat power-basis coordinates.
#[derive(Clone)]
pub struct FieldElement {
    field: Field,
    coords: Vec<Rational>,
}

/// The four exact operations of [`elem_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Checked binary arithmetic.
pub fn elem_arith(x: &FieldElement, y: &FieldElement, op: ArithOp) -> Result<FieldElement> {
    if x.field != y.field {
        return Err(Error::TowerMismatch);
    }
    Ok(match op {
        ArithOp::Add => x + y,
        ArithOp::Sub => x - y,
        ArithOp::Mul => x * y,
        ArithOp::Div => x.checked_div(y)?,
    })
}

impl FieldElement {
    pub(crate) fn from_raw(field: &Field, coords: Vec<Rational>) -> FieldElement {
        debug_assert_eq!(coords.len(), field.abs_degree());
        FieldElement {
            field: field.clone(),
            coords,
        }
    }

    pub fn zero(field: &Field) -> FieldElement {
        FieldElement::from_raw(field, field.raw_zero())
    }

    pub fn one(field: &Field) -> FieldElement {
        FieldElement::from_raw(field, field.raw_one())
    }

    pub fn from_rational(field: &Field, q: Rational) -> FieldElement {
        let mut c = field.raw_zero();
        c[0] = q;
        FieldElement::from_raw(field, c)
    }

    pub fn from_int(field: &Field, n: i64) -> FieldElement {
        FieldElement::from_rational(field, Rational::from_integer(n.into()))
    }

    /// The generator of the top level of `field` (1 for the rationals).
    pub fn generator(field: &Field) -> FieldElement {
        FieldElement::from_raw(field, field.raw_generator())
    }

    /// Builds an element from power-basis coordinates over the immediate base.
    pub fn from_relative_coords(field: &Field, coords: &[FieldElement]) -> Result<FieldElement> {
        let base = match field.base() {
            None => {
                if coords.len() != 1 || !coords[0].field.is_rationals() {
                    return Err(Error::DimensionMismatch("rational element needs one coordinate".into()));
                }
                return Ok(FieldElement::from_raw(field, coords[0].coords.clone()));
            }
            Some(b) => b,
        };
        if coords.len() != field.degree() {
            return Err(Error::DimensionMismatch(format!(
                "expected {} coordinates, got {}",
                field.degree(),
                coords.len()
            )));
        }
        let mut flat = Vec::with_capacity(field.abs_degree());
        for c in coords {
            if &c.field != base {
                return Err(Error::TowerMismatch);
            }
            flat.extend(c.coords.iter().cloned());
        }
        Ok(FieldElement::from_raw(field, flat))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Flat rational coordinates.
    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    /// Power-basis coordinates over the immediate base.
    pub fn relative_coords(&self) -> Vec<FieldElement> {
        match self.field.base() {
            None => vec![self.clone()],
            Some(b) => self
                .coords
                .chunks(b.abs_degree())
                .map(|c| FieldElement::from_raw(b, c.to_vec()))
                .collect(),
        }
    }

    /// Coordinates over a sub-level `sub` in the tensor power basis, grouped by
    /// `sub`-element.
    pub fn coords_over(&self, sub: &Field) -> Result<Vec<FieldElement>> {
        if !self.field.has_level(sub) {
            return Err(Error::NotSubLevel);
        }
        Ok(self
            .coords
            .chunks(sub.abs_degree())
            .map(|c| FieldElement::from_raw(sub, c.to_vec()))
            .collect())
    }

    /// The element as a member of the sub-level `sub`, if it lies there.
    pub fn in_level(&self, sub: &Field) -> Option<FieldElement> {
        if !self.field.has_level(sub) {
            return None;
        }
        let k = sub.abs_degree();
        if raw_is_zero(&self.coords[k..]) {
            Some(FieldElement::from_raw(sub, self.coords[..k].to_vec()))
        } else {
            None
        }
    }

    /// Embeds into a tower that has this element's field as a level.
    pub fn lift_to(&self, bigger: &Field) -> Result<FieldElement> {
        if !bigger.has_level(&self.field) {
            return Err(Error::NotSuperLevel);
        }
        Ok(FieldElement::from_raw(bigger, bigger.raw_lift(&self.coords)))
    }

    pub fn as_rational(&self) -> Option<Rational> {
        if raw_is_zero(&self.coords[1..]) {
            Some(self.coords[0].clone())
        } else {
            None
        }
    }

    pub fn is_rational(&self) -> bool {
        raw_is_zero(&self.coords[1..])
    }

    pub fn is_zero(&self) -> bool {
        raw_is_zero(&self.coords)
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && raw_is_zero(&self.coords[1..])
    }

    pub fn inv(&self) -> Result<FieldElement> {
        Ok(FieldElement::from_raw(&self.field, self.field.raw_inv(&self.coords)?))
    }

    pub fn checked_div(&self, other: &FieldElement) -> Result<FieldElement> {
        if self.field != other.field {
            return Err(Error::TowerMismatch);
        }
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, mut e: u32) -> FieldElement {
        let mut base = self.clone();
        let mut acc = FieldElement::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn scale(&self, q: &Rational) -> FieldElement {
        FieldElement::from_raw(&self.field, self.field.raw_scale(&self.coords, q))
    }

    /// Norm over the rationals.
    pub fn abs_norm(&self) -> Rational {
        self.field.raw_abs_norm(&self.coords)
    }

    /// Norm over the immediate base.
    pub fn norm_to_base(&self) -> FieldElement {
        match self.field.base() {
            None => self.clone(),
            Some(b) => FieldElement::from_raw(b, self.field.raw_norm_to_base(&self.coords)),
        }
    }

    fn check_same(&self, other: &FieldElement) {
        assert!(
            self.field == other.field,
            "field mismatch: {} vs {}",
            self.field,
            other.field
        );
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords && self.field == other.field
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coords.hash(state);
    }
}

impl<'a> Add<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        self.check_same(rhs);
        FieldElement::from_raw(&self.field, self.field.raw_add(&self.coords, &rhs.coords))
    }
}

impl<'a> Sub<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        self.check_same(rhs);
        FieldElement::from_raw(&self.field, self.field.raw_sub(&self.coords, &rhs.coords))
    }
}

impl<'a> Mul<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        self.check_same(rhs);
        FieldElement::from_raw(&self.field, self.field.raw_mul(&self.coords, &rhs.coords))
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement::from_raw(&self.field, self.coords.iter().map(|x| -x).collect())
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: &FieldElement) -> FieldElement {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<FieldElement> for &'a FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                self.$m(&rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl AddAssign<&FieldElement> for FieldElement {
    fn add_assign(&mut self, rhs: &FieldElement) {
        self.check_same(rhs);
        for (x, y) in self.coords.iter_mut().zip(&rhs.coords) {
            if !y.is_zero() {
                *x += y;
            }
        }
    }
}

impl SubAssign<&FieldElement> for FieldElement {
    fn sub_assign(&mut self, rhs: &FieldElement) {
        self.check_same(rhs);
        for (x, y) in self.coords.iter_mut().zip(&rhs.coords) {
            if !y.is_zero() {
                *x -= y;
            }
        }
    }
}

/// Writes a polynomial-in-generators expression, e.g. `-2 + 2*i` or
/// `(1 + sqrt2)*i`.
fn write_raw(field: &Field, coords: &[Rational], out: &mut String) {
    let base = match field.base() {
        None => {
            out.push_str(&coords[0].to_string());
            return;
        }
        Some(b) => b,
    };
    let m = base.abs_degree();
    let gen = field.generator_name();
    let mut first = true;
    for (s, chunk) in coords.chunks(m).enumerate() {
        if raw_is_zero(chunk) {
            continue;
        }
        let power = match s {
            0 => String::new(),
            1 => gen.to_string(),
            _ => format!("{gen}^{s}"),
        };
        let scalar = raw_is_zero(&chunk[1..]);
        let mut coeff = String::new();
        if scalar {
            let c = &chunk[0];
            let negative = c.is_negative();
            let abs = c.abs();
            if first {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            if s == 0 || !abs.is_one() {
                coeff = abs.to_string();
            }
        } else {
            if !first {
                out.push_str(" + ");
            }
            coeff.push('(');
            write_raw(base, chunk, &mut coeff);
            coeff.push(')');
        }
        match (coeff.is_empty(), power.is_empty()) {
            (true, _) => out.push_str(&power),
            (false, true) => out.push_str(&coeff),
            (false, false) => {
                out.push_str(&coeff);
                out.push('*');
                out.push_str(&power);
            }
        }
        first = false;
    }
    if first {
        out.push('0');
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        write_raw(&self.field, &self.coords, &mut s);
        f.write_str(&s)
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", self, self.field)
    }
}
