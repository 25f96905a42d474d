use crate::error::{Error, Result};

const STOCHASTIC_TOL: f64 = 1e-12;

/// Binary entropy in bits, with `0 · log 0 = 0`.
pub fn binary_entropy(p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Domain(format!("binary entropy of {p}")));
    }
    Ok(xlog2x(p) + xlog2x(1.0 - p))
}

/// `−x·log₂x`, zero at zero.
pub fn xlog2x(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        -x * x.log2()
    }
}

/// Row-stochastic matrix of `P(output | input)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Transition {
    rows: Vec<Vec<f64>>,
}

impl Transition {
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        let width = rows.first().map_or(0, Vec::len);
        if rows.is_empty() || width == 0 {
            return Err(Error::Domain("transition matrix is empty".into()));
        }
        for row in &rows {
            if row.len() != width {
                return Err(Error::Domain("ragged transition matrix".into()));
            }
            if row.iter().any(|&v| !(v >= 0.0) || !v.is_finite()) {
                return Err(Error::Domain(
                    "negative or non-finite transition entry".into(),
                ));
            }
            let sum: f64 = row.iter().sum();
            if (sum - 1.0).abs() > STOCHASTIC_TOL {
                return Err(Error::Domain(format!("transition row sums to {sum}")));
            }
        }
        Ok(Self { rows })
    }

    pub fn bsc(p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::Domain(format!("crossover {p}")));
        }
        Self::new(vec![vec![1.0 - p, p], vec![p, 1.0 - p]])
    }

    pub fn inputs(&self) -> usize {
        self.rows.len()
    }

    pub fn outputs(&self) -> usize {
        self.rows[0].len()
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }
}

/// Input distribution plus channel.
#[derive(Clone, Debug, PartialEq)]
pub struct DiscreteChannelSpec {
    input_dist: Vec<f64>,
    transition: Transition,
}

impl DiscreteChannelSpec {
    pub fn new(input_dist: Vec<f64>, transition: Transition) -> Result<Self> {
        if input_dist.len() != transition.inputs() {
            return Err(Error::Domain(format!(
                "{} input probabilities for {} channel inputs",
                input_dist.len(),
                transition.inputs()
            )));
        }
        if input_dist.iter().any(|&v| !(v >= 0.0)) {
            return Err(Error::Domain("negative input probability".into()));
        }
        let sum: f64 = input_dist.iter().sum();
        if (sum - 1.0).abs() > STOCHASTIC_TOL {
            return Err(Error::Domain(format!("input distribution sums to {sum}")));
        }
        Ok(Self {
            input_dist,
            transition,
        })
    }

    pub fn uniform(transition: Transition) -> Self {
        let n = transition.inputs();
        Self {
            input_dist: vec![1.0 / n as f64; n],
            transition,
        }
    }

    pub fn input_dist(&self) -> &[f64] {
        &self.input_dist
    }

    pub fn transition(&self) -> &Transition {
        &self.transition
    }

    pub fn output_dist(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.transition.outputs()];
        for (px, row) in self.input_dist.iter().zip(self.transition.rows()) {
            for (o, &pyx) in out.iter_mut().zip(row) {
                *o += px * pyx;
            }
        }
        out
    }

    /// `I(X;Y) = H(Y) − H(Y|X)` in bits, accumulated term by term as
    /// `Σ p(x) p(y|x) log₂(p(y|x) / p(y))`.
    pub fn mutual_information(&self) -> f64 {
        let py = self.output_dist();
        let mut total = 0.0;
        for (px, row) in self.input_dist.iter().zip(self.transition.rows()) {
            if *px == 0.0 {
                continue;
            }
            for (&pyx, &q) in row.iter().zip(&py) {
                if pyx > 0.0 {
                    total += px * pyx * (pyx / q).log2();
                }
            }
        }
        total.max(0.0)
    }
}

pub fn mutual_information_discrete(spec: &DiscreteChannelSpec) -> f64 {
    spec.mutual_information()
}

/// Secrecy capacity of a degraded BSC pair, `h(p_w) − h(p)`.
pub fn secrecy_capacity_bsc(p: f64, p_w: f64) -> Result<f64> {
    if !(0.0..=0.5).contains(&p) || !(0.0..=0.5).contains(&p_w) {
        return Err(Error::Domain(format!(
            "crossovers ({p}, {p_w}) outside [0, 1/2]"
        )));
    }
    if p > p_w {
        return Err(Error::NotDegraded { p, p_w });
    }
    Ok((binary_entropy(p_w)? - binary_entropy(p)?).max(0.0))
}

/// Result of a one-dimensional search over binary input distributions.
#[derive(Clone, Debug, PartialEq)]
pub struct SecrecySearch {
    pub capacity: f64,
    /// `[P(X=0), P(X=1)]` at the maximum.
    pub input_dist: [f64; 2],
}

/// `max_q I(X;Y) − I(X;Z)` over Bernoulli(q) inputs: a grid sweep with step
/// `grid_step` followed by golden-section refinement around the best grid point.
pub fn secrecy_capacity_search(
    main: &Transition,
    wiretap: &Transition,
    grid_step: f64,
) -> Result<SecrecySearch> {
    if main.inputs() != 2 || wiretap.inputs() != 2 {
        return Err(Error::Domain(
            "secrecy search needs binary-input channels".into(),
        ));
    }
    if !(grid_step > 0.0 && grid_step < 0.5) {
        return Err(Error::Domain(format!(
            "grid step {grid_step} outside (0, 1/2)"
        )));
    }
    let objective = |q: f64| {
        let dist = vec![1.0 - q, q];
        let iy = DiscreteChannelSpec {
            input_dist: dist.clone(),
            transition: main.clone(),
        }
        .mutual_information();
        let iz = DiscreteChannelSpec {
            input_dist: dist,
            transition: wiretap.clone(),
        }
        .mutual_information();
        iy - iz
    };

    let steps = (1.0 / grid_step).round() as usize;
    let (mut best_q, mut best) = (0.0, objective(0.0));
    for i in 1..=steps {
        let q = (i as f64 * grid_step).min(1.0);
        let v = objective(q);
        if v > best {
            best = v;
            best_q = q;
        }
    }

    // golden-section refinement on the bracketing grid cells
    let (mut lo, mut hi) = ((best_q - grid_step).max(0.0), (best_q + grid_step).min(1.0));
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = hi - ratio * (hi - lo);
    let mut d = lo + ratio * (hi - lo);
    let (mut fc, mut fd) = (objective(c), objective(d));
    for _ in 0..80 {
        if fc >= fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - ratio * (hi - lo);
            fc = objective(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + ratio * (hi - lo);
            fd = objective(d);
        }
    }
    let q = 0.5 * (lo + hi);
    let refined = objective(q);
    if refined > best {
        best = refined;
        best_q = q;
    }
    Ok(SecrecySearch {
        capacity: best.max(0.0),
        input_dist: [1.0 - best_q, best_q],
    })
}
