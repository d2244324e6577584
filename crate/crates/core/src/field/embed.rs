use super::{Field, FieldElement};
use crate::arith::mul_mod;
use crate::error::{Error, Result};

/// An explicit field embedding `sub -> target`, fixed by the images of the
/// powers of the generator of `sub`.
#[derive(Clone, Debug)]
pub struct Embedding {
    sub: Field,
    target: Field,
    images: Vec<u64>,
    /// Left inverse of the `F_p`-linear map, `degree(sub)` rows.
    left_inverse: Vec<Vec<u64>>,
}

impl Embedding {
    pub(crate) fn between(sub: &Field, target: &Field) -> Result<Self> {
        let images = images_of(sub, target)?;
        let left_inverse = left_inverse(target, &images);
        Ok(Embedding { sub: sub.clone(), target: target.clone(), images, left_inverse })
    }

    pub fn sub(&self) -> &Field {
        &self.sub
    }

    pub fn target(&self) -> &Field {
        &self.target
    }

    pub fn map(&self, a: &FieldElement) -> FieldElement {
        assert!(a.field().same(&self.sub));
        self.target.element(self.map_raw(a.value()))
    }

    pub(crate) fn map_raw(&self, a: u64) -> u64 {
        map_with(&self.sub, &self.target, &self.images, a)
    }

    /// The preimage of `y`, or `None` when `y` lies outside the subfield.
    pub fn project(&self, y: &FieldElement) -> Option<FieldElement> {
        assert!(y.field().same(&self.target));
        self.project_raw(y.value()).map(|v| self.sub.element(v))
    }

    pub(crate) fn project_raw(&self, y: u64) -> Option<u64> {
        if self.sub.is_prime_field() {
            return (y < self.sub.p()).then_some(y);
        }
        let p = self.target.p();
        let dy = self.target.digits(y);
        let x: Vec<u64> = self
            .left_inverse
            .iter()
            .map(|row| row.iter().zip(&dy).fold(0, |acc, (&r, &d)| (acc + mul_mod(r, d, p)) % p))
            .collect();
        let v = self.sub.pack_digits(&x);
        (self.map_raw(v) == y).then_some(v)
    }
}

fn map_with(sub: &Field, target: &Field, images: &[u64], a: u64) -> u64 {
    if sub.is_prime_field() {
        return a;
    }
    sub.digits(a)
        .iter()
        .zip(images)
        .fold(0, |acc, (&d, &img)| if d == 0 { acc } else { target.add(acc, target.scale(d, img)) })
}

fn images_of(sub: &Field, target: &Field) -> Result<Vec<u64>> {
    if sub.p() != target.p() || !target.degree().is_multiple_of(sub.degree()) {
        return Err(Error::FieldMismatch);
    }
    if sub.is_prime_field() {
        return Ok(vec![1]);
    }
    if sub == target {
        return Ok((0..sub.degree()).map(|i| sub.p().pow(i)).collect());
    }
    let (base, images) = target.parent_images().ok_or(Error::FieldMismatch)?;
    if base == sub {
        return Ok(images.to_vec());
    }
    let inner = images_of(sub, base)?;
    Ok(inner.into_iter().map(|x| map_with(base, target, images, x)).collect())
}

/// Rows of `B` with `B A = I`, where column `i` of `A` holds the digits of
/// `images[i]`.
fn left_inverse(target: &Field, images: &[u64]) -> Vec<Vec<u64>> {
    let p = target.p();
    let rows = target.degree() as usize;
    let cols = images.len();
    let digits: Vec<Vec<u64>> = images.iter().map(|&v| target.digits(v)).collect();
    // Augmented rows [A_r | e_r].
    let mut m: Vec<Vec<u64>> = (0..rows)
        .map(|r| {
            let mut row: Vec<u64> = (0..cols).map(|c| digits[c][r]).collect();
            row.extend((0..rows).map(|j| u64::from(j == r)));
            row
        })
        .collect();
    for c in 0..cols {
        let pivot = (c..rows).find(|&r| m[r][c] != 0).expect("embedding images are independent");
        m.swap(c, pivot);
        let inv = super::inv_mod_prime(m[c][c], p);
        for v in m[c].iter_mut() {
            *v = mul_mod(*v, inv, p);
        }
        let pivot_row = m[c].clone();
        for (r, row) in m.iter_mut().enumerate() {
            let factor = row[c];
            if r != c && factor != 0 {
                for (v, &pv) in row.iter_mut().zip(&pivot_row) {
                    *v = (*v + p - mul_mod(factor, pv, p)) % p;
                }
            }
        }
    }
    m.truncate(cols);
    m.into_iter().map(|row| row[cols..].to_vec()).collect()
}
