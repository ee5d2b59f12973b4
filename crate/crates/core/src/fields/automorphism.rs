//! Tower-preserving automorphisms and Galois groups.

use std::fmt;

use super::factor::roots_in_field;
use super::{Field, FieldElement, Poly};
use crate::error::{Error, Result};

/// An automorphism of a tower that maps every level to itself, given by the
/// image of each level's generator (`gens[j-1]` lies in level `j`).
#[derive(Clone, PartialEq, Eq)]
pub struct Automorphism {
    field: Field,
    gens: Vec<FieldElement>,
}

impl Automorphism {
    pub fn identity(field: &Field) -> Automorphism {
        let gens = field.levels().iter().skip(1).map(FieldElement::generator).collect();
        Automorphism {
            field: field.clone(),
            gens,
        }
    }

    /// The stored relative automorphism with the given index, acting as the
    /// identity on every lower level.
    pub fn relative(field: &Field, index: usize) -> Result<Automorphism> {
        if index >= field.relative_automorphism_count() {
            return Err(Error::IndexOutOfRange(format!("automorphism {index}")));
        }
        let mut a = Automorphism::identity(field);
        if let Some(last) = a.gens.last_mut() {
            *last = FieldElement::from_raw(field, field.raw_images()[index].clone());
        }
        Ok(a)
    }

    /// Builds an automorphism from explicit generator images, checking that
    /// each image is a root of the twisted minimal polynomial.
    pub fn from_images(field: &Field, gens: Vec<FieldElement>) -> Result<Automorphism> {
        let levels = field.levels();
        if gens.len() != field.depth() {
            return Err(Error::DimensionMismatch("one image per tower level".into()));
        }
        for (j, g) in gens.iter().enumerate() {
            if g.field() != &levels[j + 1] {
                return Err(Error::TowerMismatch);
            }
        }
        let a = Automorphism {
            field: field.clone(),
            gens,
        };
        for j in 1..levels.len() {
            let lower = a.restrict(&levels[j - 1])?;
            let level = &levels[j];
            let m = minpoly_over_base(level);
            let twisted = Poly::new(
                level,
                m.coeffs()
                    .iter()
                    .map(|c| lower.apply_unchecked(c).lift_to(level).expect("level"))
                    .collect(),
            );
            if !twisted.eval(&a.gens[j - 1]).is_zero() {
                return Err(Error::NonRoot(j));
            }
        }
        Ok(a)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Images of the level generators, lowest level first.
    pub fn generator_images(&self) -> &[FieldElement] {
        &self.gens
    }

    pub fn is_identity(&self) -> bool {
        self == &Automorphism::identity(&self.field)
    }

    /// The same automorphism acting on a lower level of the tower.
    pub fn restrict(&self, level: &Field) -> Result<Automorphism> {
        if !self.field.has_level(level) {
            return Err(Error::NotSubLevel);
        }
        Ok(Automorphism {
            field: level.clone(),
            gens: self.gens[..level.depth()].to_vec(),
        })
    }

    /// `true` when this automorphism is the identity on `level`.
    pub fn fixes_level(&self, level: &Field) -> bool {
        self.restrict(level).is_ok_and(|r| r.is_identity())
    }

    pub fn apply(&self, x: &FieldElement) -> Result<FieldElement> {
        if !self.field.has_level(x.field()) {
            return Err(Error::TowerMismatch);
        }
        Ok(self.apply_unchecked(x))
    }

    fn apply_unchecked(&self, x: &FieldElement) -> FieldElement {
        let f = x.field();
        let depth = f.depth();
        if depth == 0 {
            return x.clone();
        }
        let base = f.base().expect("extension level");
        let coeffs: Vec<FieldElement> = x.relative_coords().iter().map(|c| self.apply_unchecked(c)).collect();
        let img = &self.gens[depth - 1];
        // Horner in the level of x.
        let mut acc = FieldElement::zero(f);
        for c in coeffs.iter().rev() {
            acc = &(&acc * img) + &c.lift_to(f).expect("base is a level");
        }
        debug_assert!(base.depth() + 1 == depth);
        acc
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Automorphism) -> Result<Automorphism> {
        if self.field != other.field {
            return Err(Error::TowerMismatch);
        }
        Ok(Automorphism {
            field: self.field.clone(),
            gens: other.gens.iter().map(|g| self.apply_unchecked(g)).collect(),
        })
    }

    /// Extends to `field`, whose levels include this automorphism's field.
    fn extensions_to_next(&self, next: &Field) -> Vec<Automorphism> {
        let m = minpoly_over_base(next);
        let twisted_coeffs: Vec<FieldElement> = m.coeffs().iter().map(|c| self.apply_unchecked(c)).collect();
        let roots: Vec<FieldElement> = if twisted_coeffs.as_slice() == m.coeffs() {
            next.raw_images()
                .iter()
                .map(|r| FieldElement::from_raw(next, r.clone()))
                .collect()
        } else {
            let lifted: Vec<FieldElement> = twisted_coeffs
                .iter()
                .map(|c| c.lift_to(next).expect("base is a level"))
                .collect();
            roots_in_field(&Poly::new(next, lifted))
        };
        roots
            .into_iter()
            .map(|r| {
                let mut gens = self.gens.clone();
                gens.push(r);
                Automorphism {
                    field: next.clone(),
                    gens,
                }
            })
            .collect()
    }
}

fn minpoly_over_base(level: &Field) -> Poly {
    let base = level.base().expect("extension level");
    Poly::new(
        base,
        level
            .raw_minpoly()
            .iter()
            .map(|c| FieldElement::from_raw(base, c.clone()))
            .collect(),
    )
}

/// Applies `sigma` to `x`.
pub fn apply_automorphism(sigma: &Automorphism, x: &FieldElement) -> Result<FieldElement> {
    sigma.apply(x)
}

/// `true` iff every automorphism in `group` fixes `x`.
pub fn fixed_by_group(x: &FieldElement, group: &[Automorphism]) -> bool {
    group.iter().all(|g| g.apply(x).is_ok_and(|y| &y == x))
}

/// `Gal(E, F)` as a list of automorphisms (identity first) with its
/// composition table: `table[a][b]` is the index of `elements[a] ∘ elements[b]`.
#[derive(Clone, Debug)]
pub struct GaloisGroup {
    pub top: Field,
    pub fixed: Field,
    pub elements: Vec<Automorphism>,
    pub table: Vec<Vec<usize>>,
}

impl GaloisGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn index_of(&self, a: &Automorphism) -> Option<usize> {
        self.elements.iter().position(|x| x == a)
    }

    pub fn inverse_index(&self, a: usize) -> usize {
        (0..self.order()).find(|&b| self.table[a][b] == 0).expect("group")
    }
}

/// Tower-preserving automorphisms of `top` fixing the level `fixed`.
pub fn galois_group(top: &Field, fixed: &Field) -> Result<GaloisGroup> {
    if !top.has_level(fixed) {
        return Err(Error::NotSubLevel);
    }
    let levels = top.levels();
    let mut current = vec![Automorphism::identity(fixed)];
    for next in &levels[fixed.depth() + 1..] {
        current = current.iter().flat_map(|a| a.extensions_to_next(next)).collect();
    }
    let degree = top.degree_over(fixed)?;
    if current.len() != degree {
        return Err(Error::NotGalois {
            found: current.len(),
            degree,
        });
    }
    let mut table = vec![vec![0; degree]; degree];
    for a in 0..degree {
        for b in 0..degree {
            let c = current[a].compose(&current[b])?;
            table[a][b] = current.iter().position(|x| x == &c).ok_or(Error::NotClosed)?;
        }
    }
    Ok(GaloisGroup {
        top: top.clone(),
        fixed: fixed.clone(),
        elements: current,
        table,
    })
}

impl fmt::Display for Automorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return f.write_str("id");
        }
        let levels = self.field.levels();
        let parts: Vec<String> = self
            .gens
            .iter()
            .enumerate()
            .filter(|(j, g)| **g != FieldElement::generator(&levels[j + 1]))
            .map(|(j, g)| format!("{} -> {}", levels[j + 1].generator_name(), g))
            .collect();
        f.write_str(&parts.join(", "))
    }
}

impl fmt::Debug for Automorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Automorphism({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::tower_quadratic;

    #[test]
    fn conjugation_on_gaussians() {
        let qi = Field::quadratic(-1).unwrap();
        let g = galois_group(&qi, &Field::rationals()).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.table, vec![vec![0, 1], vec![1, 0]]);
        let conj = &g.elements[1];
        let i = FieldElement::generator(&qi);
        let x = FieldElement::from_int(&qi, 3) + FieldElement::from_int(&qi, 2) * &i;
        let y = FieldElement::from_int(&qi, 3) - FieldElement::from_int(&qi, 2) * &i;
        assert_eq!(conj.apply(&x).unwrap(), y);
        assert_eq!(conj.to_string(), "i -> -i");
        let r = FieldElement::from_rational(&qi, crate::fields::Rational::new(5.into(), 7.into()));
        assert_eq!(conj.apply(&r).unwrap(), r);
        assert!(fixed_by_group(&r, &g.elements));
        assert!(!fixed_by_group(&i, &g.elements));
        assert!(fixed_by_group(&(&i * &i), &g.elements));
    }

    #[test]
    fn trivial_group() {
        let qi = Field::quadratic(-1).unwrap();
        let g = galois_group(&qi, &qi).unwrap();
        assert_eq!(g.order(), 1);
        assert!(g.elements[0].is_identity());
    }

    #[test]
    fn not_galois() {
        let q = Field::rationals();
        let f = Field::extend(&q, "c", &Poly::from_ints(&q, &[-2, 0, 0, 1]), &[]).unwrap();
        assert_eq!(
            galois_group(&f, &q).unwrap_err(),
            Error::NotGalois { found: 1, degree: 3 }
        );
    }

    #[test]
    fn biquadratic_tower() {
        let q2 = Field::quadratic(2).unwrap();
        let t = tower_quadratic(&q2, -1, "i").unwrap();
        let g = galois_group(&t, &Field::rationals()).unwrap();
        assert_eq!(g.order(), 4);
        // Klein four-group: every element is its own inverse.
        for a in 0..4 {
            assert_eq!(g.table[a][a], 0);
        }
        let over = galois_group(&t, &q2).unwrap();
        assert_eq!(over.order(), 2);
    }

    #[test]
    fn twisted_extension_over_cyclotomic() {
        // Q(i)(sqrt(1+i)) is not normal over Q; its automorphisms moving i
        // cannot be extended.
        let qi = Field::quadratic(-1).unwrap();
        let a = FieldElement::one(&qi) + FieldElement::generator(&qi);
        let m = Poly::new(&qi, vec![-a, FieldElement::zero(&qi), FieldElement::one(&qi)]);
        let e = Field::extend(
            &qi,
            "r",
            &m,
            &[vec![FieldElement::zero(&qi), FieldElement::from_int(&qi, -1)]],
        )
        .unwrap();
        assert_eq!(galois_group(&e, &qi).unwrap().order(), 2);
        assert!(matches!(
            galois_group(&e, &Field::rationals()),
            Err(Error::NotGalois { found: 2, degree: 4 })
        ));
    }
}
