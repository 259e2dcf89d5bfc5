use std::cmp::Ordering;

/// A dense exponent vector with its total degree cached.
///
/// `Ord` is degree-reverse-lexicographic in table order: higher total degree
/// wins, and ties are broken by the last differing variable, where the
/// smaller exponent is the larger monomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Box<[u32]>,
    degree: u32,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial { exps: vec![0; nvars].into_boxed_slice(), degree: 0 }
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        let degree = exps.iter().sum();
        Monomial { exps: exps.into_boxed_slice(), degree }
    }

    pub fn variable(nvars: usize, i: usize, e: u32) -> Self {
        let mut v = vec![0; nvars];
        v[i] = e;
        Monomial::from_exponents(v)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i]
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        let exps: Vec<u32> = self.exps.iter().zip(other.exps.iter()).map(|(a, b)| a + b).collect();
        Monomial { exps: exps.into_boxed_slice(), degree: self.degree + other.degree }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `self / other` when `other` divides `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        let exps: Vec<u32> = self.exps.iter().zip(other.exps.iter()).map(|(a, b)| a - b).collect();
        Some(Monomial { exps: exps.into_boxed_slice(), degree: self.degree - other.degree })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial::from_exponents(self.exps.iter().zip(other.exps.iter()).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial::from_exponents(self.exps.iter().zip(other.exps.iter()).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn pow(&self, e: u32) -> Monomial {
        Monomial::from_exponents(self.exps.iter().map(|a| a * e).collect())
    }

    /// Variables with positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps.iter().enumerate().filter(|(_, e)| **e > 0).map(|(i, _)| i)
    }

    /// Text form over `names`: `x1^2*x3`, or `1` for the empty product.
    pub fn render(&self, names: &[String]) -> String {
        if self.is_one() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        for (i, e) in self.exps.iter().enumerate() {
            match *e {
                0 => {}
                1 => parts.push(names[i].clone()),
                e => parts.push(format!("{}^{}", names[i], e)),
            }
        }
        parts.join("*")
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree.cmp(&other.degree) {
            Ordering::Equal => {}
            o => return o,
        }
        for (a, b) in self.exps.iter().zip(other.exps.iter()).rev() {
            if a != b {
                return b.cmp(a);
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(v: &[u32]) -> Monomial {
        Monomial::from_exponents(v.to_vec())
    }

    #[test]
    fn degrevlex_order() {
        // x > y > z, and x*z < y^2 under degrevlex.
        assert!(m(&[1, 0, 0]) > m(&[0, 1, 0]));
        assert!(m(&[0, 1, 0]) > m(&[0, 0, 1]));
        assert!(m(&[1, 0, 1]) < m(&[0, 2, 0]));
        assert!(m(&[0, 0, 2]) > m(&[1, 0, 0]));
    }

    #[test]
    fn divisibility() {
        let a = m(&[2, 1, 0]);
        let b = m(&[1, 1, 0]);
        assert!(b.divides(&a));
        assert_eq!(a.checked_div(&b), Some(m(&[1, 0, 0])));
        assert_eq!(b.checked_div(&a), None);
        assert_eq!(a.lcm(&m(&[0, 2, 1])), m(&[2, 2, 1]));
    }

    #[test]
    fn render() {
        let names: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
        assert_eq!(m(&[2, 0, 1]).render(&names), "x^2*z");
        assert_eq!(m(&[0, 0, 0]).render(&names), "1");
    }
}
