//! Independent oracles: dense linear algebra and enumeration, sharing no
//! code with the standard-basis engine.
#![allow(dead_code)]

use std::collections::HashMap;

use rand::Rng;

/// Sparse integer polynomial used to generate test inputs.
#[derive(Clone, Debug, PartialEq)]
pub struct IntPoly {
    pub nvars: usize,
    pub terms: Vec<(Vec<u32>, i64)>,
}

pub const NAMES: [&str; 4] = ["x", "y", "z", "w"];

impl IntPoly {
    pub fn new(nvars: usize, terms: Vec<(Vec<u32>, i64)>) -> Self {
        let mut acc: HashMap<Vec<u32>, i64> = HashMap::new();
        for (e, c) in terms {
            *acc.entry(e).or_insert(0) += c;
        }
        let mut terms: Vec<(Vec<u32>, i64)> = acc.into_iter().filter(|(_, c)| *c != 0).collect();
        terms.sort();
        IntPoly { nvars, terms }
    }

    pub fn derivative(&self, i: usize) -> IntPoly {
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e[i] > 0)
            .map(|(e, c)| {
                let mut e2 = e.clone();
                e2[i] -= 1;
                (e2, c * e[i] as i64)
            })
            .collect();
        IntPoly::new(self.nvars, terms)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn order(&self) -> u32 {
        self.terms.iter().map(|(e, _)| e.iter().sum()).min().unwrap_or(u32::MAX)
    }

    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (e, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                s.push_str(if *c < 0 { " - " } else { " + " });
            } else if *c < 0 {
                s.push('-');
            }
            let mut factors: Vec<String> = Vec::new();
            if c.abs() != 1 || e.iter().all(|&x| x == 0) {
                factors.push(c.abs().to_string());
            }
            for (i, &x) in e.iter().enumerate() {
                match x {
                    0 => {}
                    1 => factors.push(NAMES[i].to_string()),
                    _ => factors.push(format!("{}^{}", NAMES[i], x)),
                }
            }
            s.push_str(&factors.join("*"));
        }
        s
    }
}

pub fn names(nvars: usize) -> Vec<&'static str> {
    NAMES[..nvars].to_vec()
}

/// Random polynomial with an isolated singularity at the origin: pure powers
/// `x_i^a_i` plus a few terms of degree `>= 2`, all of degree at most `max_deg`.
pub fn random_isolated(rng: &mut impl Rng, nvars: usize, max_pow: u32, max_deg: u32) -> IntPoly {
    let mut terms = Vec::new();
    for i in 0..nvars {
        let mut e = vec![0; nvars];
        e[i] = rng.gen_range(2..=max_pow);
        terms.push((e, 1));
    }
    for _ in 0..rng.gen_range(0..=3) {
        let d = rng.gen_range(2..=max_deg);
        let mut e = vec![0u32; nvars];
        for _ in 0..d {
            e[rng.gen_range(0..nvars)] += 1;
        }
        terms.push((e, rng.gen_range(-3i64..=3)));
    }
    IntPoly::new(nvars, terms)
}

const P: u64 = 2_147_483_647;

fn monomials_below(nvars: usize, d: u32) -> Vec<Vec<u32>> {
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    if d > 0 {
        rec(0, d - 1, &mut vec![0; nvars], &mut out);
    }
    out
}

fn inv(a: u64) -> u64 {
    let (mut r, mut b, mut e) = (1u64, a % P, P - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % P;
        }
        b = b * b % P;
        e >>= 1;
    }
    r
}

/// `dim C[x] / (I + m^d)` by Gaussian elimination modulo a large prime.
pub fn truncated_quotient_dim(gens: &[IntPoly], nvars: usize, d: u32) -> u64 {
    let monos = monomials_below(nvars, d);
    let index: HashMap<&Vec<u32>, usize> = monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let n = monos.len();
    let mut pivots: Vec<Option<Vec<u64>>> = vec![None; n];
    let mut rank = 0u64;
    for g in gens {
        let ord = g.order();
        for a in &monos {
            if a.iter().sum::<u32>() + ord >= d {
                continue;
            }
            let mut row = vec![0u64; n];
            for (e, c) in &g.terms {
                let m: Vec<u32> = e.iter().zip(a).map(|(x, y)| x + y).collect();
                if let Some(&j) = index.get(&m) {
                    row[j] = (row[j] + c.rem_euclid(P as i64) as u64) % P;
                }
            }
            for j in 0..n {
                if row[j] == 0 {
                    continue;
                }
                match &pivots[j] {
                    Some(p) => {
                        let f = row[j];
                        for (x, y) in row.iter_mut().zip(p).skip(j) {
                            if *y != 0 {
                                *x = (*x + P - f * y % P) % P;
                            }
                        }
                    }
                    None => {
                        let s = inv(row[j]);
                        for x in row.iter_mut().skip(j) {
                            *x = *x * s % P;
                        }
                        pivots[j] = Some(row);
                        rank += 1;
                        break;
                    }
                }
            }
        }
    }
    n as u64 - rank
}

/// Local colength `dim O_0 / I`: the truncated dimensions increase with `d`
/// and `dim(d) == dim(d + 1)` forces `m^d ⊂ I` by Nakayama.
pub fn local_colength(gens: &[IntPoly], nvars: usize, max_d: u32) -> Option<u64> {
    let mut prev = truncated_quotient_dim(gens, nvars, 1);
    for d in 2..=max_d {
        let cur = truncated_quotient_dim(gens, nvars, d);
        if cur == prev {
            return Some(cur);
        }
        prev = cur;
    }
    None
}

pub fn milnor_oracle(g: &IntPoly, max_d: u32) -> Option<u64> {
    let j: Vec<IntPoly> = (0..g.nvars).map(|i| g.derivative(i)).collect();
    local_colength(&j, g.nvars, max_d)
}

pub fn tjurina_oracle(g: &IntPoly, max_d: u32) -> Option<u64> {
    let mut j: Vec<IntPoly> = (0..g.nvars).map(|i| g.derivative(i)).collect();
    j.push(g.clone());
    local_colength(&j, g.nvars, max_d)
}

/// Monomials outside a monomial ideal that contains a pure power of every
/// variable, counted by enumerating the bounding box.
pub fn staircase_count(gens: &[Vec<u32>]) -> u64 {
    let nvars = gens[0].len();
    let bounds: Vec<u32> = (0..nvars)
        .map(|i| {
            gens.iter()
                .filter(|e| e.iter().enumerate().all(|(j, &x)| j == i || x == 0))
                .map(|e| e[i])
                .min()
                .expect("pure power present")
        })
        .collect();
    let mut count = 0;
    let mut cur = vec![0u32; nvars];
    loop {
        if !gens.iter().any(|g| g.iter().zip(&cur).all(|(a, b)| a <= b)) {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == nvars {
                return count;
            }
            cur[i] += 1;
            if cur[i] < bounds[i] {
                break;
            }
            cur[i] = 0;
            i += 1;
        }
    }
}

/// Random monomial ideal with all pure powers, as exponent vectors.
pub fn random_monomial_ideal(rng: &mut impl Rng, nvars: usize, max_pow: u32) -> Vec<Vec<u32>> {
    let mut gens = Vec::new();
    for i in 0..nvars {
        let mut e = vec![0; nvars];
        e[i] = rng.gen_range(1..=max_pow);
        gens.push(e);
    }
    for _ in 0..rng.gen_range(0..=4) {
        gens.push((0..nvars).map(|_| rng.gen_range(0..max_pow)).collect());
    }
    gens.retain(|e| e.iter().any(|&x| x > 0));
    gens
}

pub fn monomial_text(e: &[u32]) -> String {
    IntPoly::new(e.len(), vec![(e.to_vec(), 1)]).to_text()
}
