//! Lubin quotients of a law by a kernel point, and the iterated quotient.

use crate::series::solve::solve_by_weight;
use crate::series::{vars, SeriesError, TruncatedSeries, Variable};

use super::{fgl_validate, FglError, FormalGroupLaw};

/// A morphism of laws `h: F -> F'` given by a series in `x` and the target parameters.
#[derive(Clone, Debug)]
pub struct Isogeny {
    source: FormalGroupLaw,
    target: FormalGroupLaw,
    map: TruncatedSeries,
    kernel: Vec<TruncatedSeries>,
}

impl Isogeny {
    pub fn source(&self) -> &FormalGroupLaw {
        &self.source
    }

    pub fn target(&self) -> &FormalGroupLaw {
        &self.target
    }

    /// `h(x)`, over `x` (the source weight) followed by the target parameters.
    pub fn map(&self) -> &TruncatedSeries {
        &self.map
    }

    /// The declared kernel points, over the same variables as [`Isogeny::map`].
    pub fn kernel(&self) -> &[TruncatedSeries] {
        &self.kernel
    }

    fn ambient(&self) -> Vec<Variable> {
        let w = self.source.weight();
        let mut amb = vars(&[("x", w), ("y", w)]);
        amb.extend(self.target.params().iter().cloned());
        amb
    }

    /// Re-checks `h(F(x, y)) = F'(h(x), h(y))` up to truncation.
    pub fn check_morphism(&self) -> Result<(), FglError> {
        let amb = self.ambient();
        let h = self.map.reembed(&amb)?;
        let f = self.source.series().reembed(&amb)?;
        let left = h.substitute(&[("x", &f)])?;
        let hy = h.swap_variables("x", "y")?;
        let right = self.target.evaluate(&h, &hy)?;
        match left.first_difference(&right)? {
            None => Ok(()),
            Some((e, _)) => Err(FglError::MorphismMismatch {
                monomial: left.format_monomial(&e),
            }),
        }
    }

    /// Checks `h(p) = 0` for every declared kernel point.
    pub fn check_kernel(&self) -> Result<(), FglError> {
        for p in &self.kernel {
            if !self.map.substitute(&[("x", p)])?.is_zero() {
                return Err(FglError::NotAKernelPoint { point: p.to_string() });
            }
        }
        Ok(())
    }
}

fn param_monomials(params: &[Variable], max: u32) -> Vec<(Vec<u32>, u32)> {
    fn go(params: &[Variable], at: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<(Vec<u32>, u32)>, max: u32) {
        if at == params.len() {
            out.push((cur.clone(), max - left));
            return;
        }
        let w = params[at].weight;
        let mut k = 0;
        while k * w <= left {
            cur.push(k);
            go(params, at + 1, left - k * w, cur, out, max);
            cur.pop();
            k += 1;
        }
    }
    let mut out = Vec::new();
    go(params, 0, max, &mut Vec::new(), &mut out, max);
    out
}

/// The quotient of `law` by the subgroup `{0, point}`.
///
/// `point` is a series in the parameters of `law` followed by `extra`, which become
/// the additional parameters of the quotient. With `h(x) = x F(x, point)`, the
/// quotient law `F'` is the unique series with `h(F(x, y)) = F'(h(x), h(y))`; it
/// is solved weight by weight, where `x` and `y` in `F'` carry the leading weight
/// of `h`.
pub fn quotient_by_point(
    law: &FormalGroupLaw,
    point: &TruncatedSeries,
    extra: &[Variable],
) -> Result<Isogeny, FglError> {
    let w = law.weight();
    let n = law.truncation();
    let ring = law.ring();
    let mut params: Vec<Variable> = law.params().to_vec();
    params.extend(extra.iter().cloned());
    for (i, p) in params.iter().enumerate() {
        if ["x", "y", "z"].contains(&p.name.as_str()) || params[..i].iter().any(|q| q.name == p.name) {
            return Err(FglError::Shape(format!("parameter name {:?} is reserved or repeated", p.name)));
        }
    }
    if point.truncation() < n {
        return Err(SeriesError::TruncationMismatch {
            left: n,
            right: point.truncation(),
        }
        .into());
    }
    let mut amb = vars(&[("x", w), ("y", w)]);
    amb.extend(params.iter().cloned());
    let f = law.series().reembed(&amb)?;
    let pt = point.restrict(n).change_ring(ring)?.reembed(&amb)?;
    let x = TruncatedSeries::variable(ring, &amb, n, "x")?;
    let h = x.mul(&f.substitute(&[("y", &pt)])?)?;
    let Some(hw) = h.min_weight() else {
        return Err(FglError::Shape("the isogeny vanishes identically".into()));
    };
    let hy = h.swap_variables("x", "y")?;
    let target = h.substitute(&[("x", &f)])?;

    let pmons = param_monomials(&params, n);
    let mut unknowns: Vec<(u32, u32, usize, u32)> = Vec::new();
    for d in 1..=n / hw {
        for i in 0..=d {
            for (a, (_, pw)) in pmons.iter().enumerate() {
                let weight = d * hw + pw;
                if weight <= n {
                    unknowns.push((i, d - i, a, weight));
                }
            }
        }
    }
    unknowns.sort_by_key(|u| (u.3, u.0 + u.1, u.0, u.2));
    let mut hxp = vec![TruncatedSeries::one(ring, &amb, n)];
    let mut hyp = hxp.clone();
    let columns: Vec<TruncatedSeries> = unknowns
        .iter()
        .map(|&(i, j, a, _)| {
            while hxp.len() <= i as usize {
                let next = hxp.last().expect("nonempty").mul(&h).expect("same shape");
                hxp.push(next);
            }
            while hyp.len() <= j as usize {
                let next = hyp.last().expect("nonempty").mul(&hy).expect("same shape");
                hyp.push(next);
            }
            let mut shift = vec![0, 0];
            shift.extend(pmons[a].0.iter().copied());
            hxp[i as usize]
                .mul(&hyp[j as usize])
                .expect("same shape")
                .mul_monomial(&shift, &ring.one())
        })
        .collect();
    let weights: Vec<u32> = unknowns.iter().map(|u| u.3).collect();
    let coeffs = solve_by_weight(&target, &columns, &weights).map_err(|e| match e {
        SeriesError::Underdetermined { weight, .. } => FglError::UnderdeterminedStep { weight },
        SeriesError::Inconsistent { weight, monomial } => FglError::InconsistentStep { weight, monomial },
        other => other.into(),
    })?;

    let mut tvars = vars(&[("x", hw), ("y", hw)]);
    tvars.extend(params.iter().cloned());
    let terms: Vec<(Vec<u32>, _)> = unknowns
        .iter()
        .zip(coeffs)
        .filter(|(_, c)| !c.is_zero())
        .map(|(&(i, j, a, _), c)| {
            let mut e = vec![i, j];
            e.extend(pmons[a].0.iter().copied());
            (e, c)
        })
        .collect();
    let quotient = TruncatedSeries::from_terms(ring, &tvars, n, terms.iter().map(|(e, c)| (e.as_slice(), c.clone())));
    let target_law = fgl_validate(&quotient)?;

    let mut mvars = vec![Variable::new("x", w)];
    mvars.extend(params.iter().cloned());
    let map = h.reembed(&mvars)?;
    let kernel = vec![TruncatedSeries::zero(ring, &mvars, n), pt.reembed(&mvars)?];
    let iso = Isogeny {
        source: law.clone(),
        target: target_law,
        map,
        kernel,
    };
    iso.check_kernel()?;
    Ok(iso)
}

/// The Lubin quotient `F_t` of `F` by `{0, t}`, with isogeny `h_t(x) = x F(x, t)`.
pub fn lubin_quotient(law: &FormalGroupLaw) -> Result<Isogeny, FglError> {
    lubin_quotient_in(law, "t")
}

/// [`lubin_quotient`] with the kernel parameter given a chosen name.
pub fn lubin_quotient_in(law: &FormalGroupLaw, name: &str) -> Result<Isogeny, FglError> {
    let v = vec![Variable::new(name, law.weight())];
    let mut pv = law.params().to_vec();
    pv.extend(v.iter().cloned());
    let point = TruncatedSeries::variable(law.ring(), &pv, law.truncation(), name)?;
    quotient_by_point(law, &point, &v)
}

/// The two-step quotient `F -> F_t -> F_{t,s}` together with its checks.
#[derive(Clone, Debug)]
pub struct IteratedQuotient {
    pub first: Isogeny,
    pub second: Isogeny,
    /// `h_{t,s}` over `x, t, s`.
    pub composite: TruncatedSeries,
    /// `xF(x, t)F(x, s)F(x, F(s, t))` over `x, t, s`.
    pub closed_form: TruncatedSeries,
    /// `F_{s,t}` re-expressed over `x, y, t, s`.
    pub swapped: FormalGroupLaw,
}

impl IteratedQuotient {
    pub fn law(&self) -> &FormalGroupLaw {
        self.second.target()
    }
}

struct TwoStep {
    first: Isogeny,
    second: Isogeny,
    composite: TruncatedSeries,
}

fn two_step(law: &FormalGroupLaw, first: &str, second: &str) -> Result<TwoStep, FglError> {
    let w = law.weight();
    let one = lubin_quotient_in(law, first)?;
    let point = one.map().rename(&[("x", second)]);
    let two = quotient_by_point(one.target(), &point, &[Variable::new(second, w)])?;
    let xts = vars(&[("x", w), ("t", w), ("s", w)]);
    let h1 = one.map().reembed(&xts)?;
    let composite = two.map().reembed(&vars(&[("x", 2 * w), ("t", w), ("s", w)]))?.substitute(&[("x", &h1)])?;
    Ok(TwoStep {
        first: one,
        second: two,
        composite,
    })
}

/// Quotients a parameter-free law by `{0, t}` and then by `{0, h_t(s)}`, and checks the
/// closed form of the composite isogeny, its kernel `{0, t, s, F(s, t)}`, and that
/// the opposite order yields the same composite and the same law `F_{t,s} = F_{s,t}`.
pub fn iterated_quotient(law: &FormalGroupLaw) -> Result<IteratedQuotient, FglError> {
    if !law.params().is_empty() {
        return Err(FglError::Shape("the iterated quotient needs a law without parameters".into()));
    }
    let w = law.weight();
    let n = law.truncation();
    let ring = law.ring();
    let TwoStep {
        first,
        second,
        composite,
    } = two_step(law, "t", "s")?;

    let xts = vars(&[("x", w), ("t", w), ("s", w)]);
    let var = |name: &str| TruncatedSeries::variable(ring, &xts, n, name);
    let (x, t, s) = (var("x")?, var("t")?, var("s")?);
    let fst = law.evaluate(&s, &t)?;
    let mut closed_form = x.clone();
    for other in [&t, &s, &fst] {
        closed_form = closed_form.mul(&law.evaluate(&x, other)?)?;
    }
    if let Some((e, _)) = composite.first_difference(&closed_form)? {
        return Err(FglError::ClosedFormMismatch {
            monomial: composite.format_monomial(&e),
        });
    }
    for p in [TruncatedSeries::zero(ring, &xts, n), t.clone(), s.clone(), fst.clone()] {
        if !composite.substitute(&[("x", &p)])?.is_zero() {
            return Err(FglError::KernelMismatch { point: p.to_string() });
        }
    }

    let other = two_step(law, "s", "t")?;
    if let Some((e, _)) = other.composite.first_difference(&composite)? {
        return Err(FglError::SymmetryMismatch {
            monomial: composite.format_monomial(&e),
        });
    }
    let tv = second.target().series().variables().to_vec();
    let swapped = FormalGroupLaw::new_unchecked(other.second.target().series().reembed(&tv)?);
    if let Some((e, _)) = swapped.series().first_difference(second.target().series())? {
        return Err(FglError::SymmetryMismatch {
            monomial: swapped.series().format_monomial(&e),
        });
    }
    Ok(IteratedQuotient {
        first,
        second,
        composite,
        closed_form,
        swapped,
    })
}
