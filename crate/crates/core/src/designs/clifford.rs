use std::collections::{HashMap, VecDeque};
use std::sync::OnceLock;

use super::pauli_circuit;
use crate::circuits::{Circuit, Gate, Resolver, SetDescriptor, SetKind};
use crate::{Error, Result};

/// Sign-free tableau: row `r` is the image of `X_r` (r < n) or `Z_{r−n}` under
/// conjugation, stored as `x` bits in the low `n` bits and `z` bits above them.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Tableau(u64);

fn row_bits(n: usize) -> usize {
    2 * n
}

impl Tableau {
    fn identity(n: usize) -> Tableau {
        let mut key = 0u64;
        for r in 0..2 * n {
            key |= 1u64 << (r * row_bits(n) + r);
        }
        Tableau(key)
    }

    fn rows(self, n: usize) -> Vec<u64> {
        let w = row_bits(n);
        (0..2 * n).map(|r| self.0 >> (r * w) & ((1 << w) - 1)).collect()
    }

    fn from_rows(n: usize, rows: &[u64]) -> Tableau {
        Tableau(rows.iter().enumerate().fold(0, |acc, (r, &v)| acc | v << (r * row_bits(n))))
    }

    /// Conjugate every row by `g`.
    fn then(self, n: usize, g: &Gate) -> Tableau {
        let x = |q: usize| 1u64 << q;
        let z = |q: usize| 1u64 << (n + q);
        let flip_if = |v: u64, cond: u64, target: u64| if v & cond != 0 { v ^ target } else { v };
        let rows: Vec<u64> = self
            .rows(n)
            .into_iter()
            .map(|v| match g.kind_name() {
                "H" => {
                    let q = g.targets[0];
                    let (xb, zb) = (v & x(q) != 0, v & z(q) != 0);
                    let cleared = v & !(x(q) | z(q));
                    cleared | if zb { x(q) } else { 0 } | if xb { z(q) } else { 0 }
                }
                "S" => flip_if(v, x(g.targets[0]), z(g.targets[0])),
                "CNOT" => {
                    let (c, t) = (g.targets[0], g.targets[1]);
                    let v = flip_if(v, x(c), x(t));
                    flip_if(v, z(t), z(c))
                }
                other => unreachable!("{other} is not a Clifford generator"),
            })
            .collect();
        Tableau::from_rows(n, &rows)
    }
}

fn generators(n: usize) -> Vec<Gate> {
    let mut gens: Vec<Gate> = (0..n).map(Gate::h).collect();
    gens.extend((0..n).map(Gate::s));
    for c in 0..n {
        for t in 0..n {
            if c != t {
                gens.push(Gate::cnot(c, t));
            }
        }
    }
    gens
}

/// Breadth-first search over tableaux; each keeps the first gate word that reached it.
fn enumerate_symplectic(n: usize) -> Vec<Vec<Gate>> {
    let gens = generators(n);
    let start = Tableau::identity(n);
    let mut words: HashMap<Tableau, Vec<Gate>> = HashMap::from([(start, Vec::new())]);
    let mut queue = VecDeque::from([start]);
    while let Some(tab) = queue.pop_front() {
        let word = words[&tab].clone();
        for g in &gens {
            let next = tab.then(n, g);
            if let std::collections::hash_map::Entry::Vacant(e) = words.entry(next) {
                let mut w = word.clone();
                w.push(g.clone());
                e.insert(w);
                queue.push_back(next);
            }
        }
    }
    let mut sorted: Vec<(Tableau, Vec<Gate>)> = words.into_iter().collect();
    sorted.sort_by_key(|(tab, _)| *tab);
    sorted.into_iter().map(|(_, w)| w).collect()
}

fn symplectic_words(n: usize) -> Result<&'static [Vec<Gate>]> {
    static ONE: OnceLock<Vec<Vec<Gate>>> = OnceLock::new();
    static TWO: OnceLock<Vec<Vec<Gate>>> = OnceLock::new();
    match n {
        1 => Ok(ONE.get_or_init(|| enumerate_symplectic(1))),
        2 => Ok(TWO.get_or_init(|| enumerate_symplectic(2))),
        _ => Err(Error::domain(format!("Clifford enumeration supports n ∈ {{1, 2}}, got {n}"))),
    }
}

/// `|Sp(2n, F₂)|`: 6 for one qubit, 720 for two.
pub fn symplectic_count(n: usize) -> Result<usize> {
    Ok(symplectic_words(n)?.len())
}

/// Size of the Clifford group modulo phase, `4^n |Sp(2n, F₂)|`.
pub fn clifford_order(n: usize) -> Result<usize> {
    match n {
        1 => Ok(24),
        2 => Ok(11520),
        _ => Err(Error::domain(format!("Clifford enumeration supports n ∈ {{1, 2}}, got {n}"))),
    }
}

/// Element `idx = s·4^n + p`: Pauli `p` followed by the canonical circuit of tableau `s`.
pub fn clifford_circuit(n: usize, idx: usize) -> Result<Circuit> {
    let words = symplectic_words(n)?;
    let paulis = 1usize << (2 * n);
    let (s, p) = (idx / paulis, idx % paulis);
    let word = words
        .get(s)
        .ok_or(Error::IndexOutOfRange { index: idx + 1, k: words.len() * paulis })?;
    let mut c = pauli_circuit(n, p)?;
    for g in word {
        c.push(g.clone())?;
    }
    Ok(c)
}

pub fn clifford_set(n: usize) -> Result<SetDescriptor> {
    let d = SetDescriptor {
        kind: SetKind::Unitary,
        n,
        k: clifford_order(n)?,
        resolver: Resolver::Clifford,
        initial_state: None,
    };
    d.validate()?;
    Ok(d)
}

/// The Clifford orbit of `|0…0⟩` with duplicates up to phase removed, in
/// first-appearance order.
pub fn stabilizer_states(n: usize) -> Result<SetDescriptor> {
    let cliffords = clifford_set(n)?;
    let mut kept: Vec<(Circuit, crate::numerics::DenseState)> = Vec::new();
    for j in 1..=cliffords.k {
        let c = cliffords.resolve(j)?;
        let psi = crate::circuits::simulate_state(&c, "")?;
        if !kept.iter().any(|(_, phi)| phi.inner(&psi).norm() > 1.0 - 1e-9) {
            kept.push((c, psi));
        }
    }
    SetDescriptor::explicit(SetKind::State, n, kept.into_iter().map(|(c, _)| c).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuits::circuit_unitary;
    use crate::numerics::DenseOperator;

    #[test]
    fn group_orders() {
        assert_eq!(symplectic_count(1).unwrap(), 6);
        assert_eq!(symplectic_count(2).unwrap(), 720);
        assert_eq!(clifford_set(1).unwrap().k, 24);
        assert_eq!(clifford_set(2).unwrap().k, 11520);
        assert!(clifford_set(3).is_err());
    }

    /// Conjugation of Paulis by the dense unitary agrees with the tableau rule.
    #[test]
    fn tableau_matches_dense_conjugation() {
        let n = 2;
        let paulis: Vec<DenseOperator> = (0..16).map(|p| circuit_unitary(&pauli_circuit(n, p).unwrap()).unwrap()).collect();
        let pauli_of = |x: u64, z: u64| -> usize {
            // per qubit (x,z) -> I X Z Y digits 0 1 3 2
            (0..n).fold(0, |acc, q| {
                let d = match (x >> q & 1, z >> q & 1) {
                    (0, 0) => 0,
                    (1, 0) => 1,
                    (1, 1) => 2,
                    _ => 3,
                };
                acc * 4 + d
            })
        };
        for word in symplectic_words(n).unwrap().iter().step_by(37) {
            let c = Circuit::from_gates(n, word.clone()).unwrap();
            let u = circuit_unitary(&c).unwrap();
            let mut tab = Tableau::identity(n);
            for g in word {
                tab = tab.then(n, g);
            }
            for (r, v) in tab.rows(n).into_iter().enumerate() {
                let gen = if r < n { pauli_of(1 << r, 0) } else { pauli_of(0, 1 << (r - n)) };
                let image = u.mul(&paulis[gen]).mul(&u.dagger());
                let target = &paulis[pauli_of(v & 3, v >> n)];
                let overlap = target.hs_inner(&image).norm() / 4.0;
                assert!((overlap - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn elements_distinct_modulo_phase() {
        let d = clifford_set(1).unwrap();
        let us = d.unitaries().unwrap();
        for i in 0..us.len() {
            for j in 0..i {
                let ov = us[i].hs_inner(&us[j]).norm();
                assert!(ov < 2.0 - 1e-9, "{i} {j}");
            }
        }
    }

    #[test]
    fn stabilizer_counts() {
        assert_eq!(stabilizer_states(1).unwrap().k, 6);
        assert_eq!(stabilizer_states(2).unwrap().k, 60);
    }

    #[test]
    fn enumeration_is_reproducible() {
        let c = clifford_circuit(2, 5000).unwrap();
        let word = &enumerate_symplectic(2)[5000 / 16];
        assert_eq!(&c.gates()[c.len() - word.len()..], word.as_slice());
        assert_eq!(c, clifford_circuit(2, 5000).unwrap());
    }
}
