use serde::{Deserialize, Serialize};

/// Galilei group element in one dimension with the rotation fixed to the
/// identity. Acts on coordinates as `(x, t) -> (x + w t + a, t + b)`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct GalileiElement {
    pub w: f64,
    pub a: f64,
    pub b: f64,
}

impl GalileiElement {
    pub const IDENTITY: Self = Self {
        w: 0.0,
        a: 0.0,
        b: 0.0,
    };

    pub fn new(w: f64, a: f64, b: f64) -> Self {
        Self { w, a, b }
    }

    pub fn boost(w: f64) -> Self {
        Self::new(w, 0.0, 0.0)
    }

    pub fn translation(a: f64) -> Self {
        Self::new(0.0, a, 0.0)
    }

    pub fn time_shift(b: f64) -> Self {
        Self::new(0.0, 0.0, b)
    }

    pub fn act(&self, x: f64, t: f64) -> (f64, f64) {
        (x + self.w * t + self.a, t + self.b)
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn compose(&self, first: &Self) -> Self {
        Self {
            w: first.w + self.w,
            a: first.a + self.a + self.w * first.b,
            b: first.b + self.b,
        }
    }

    pub fn inverse(&self) -> Self {
        Self {
            w: -self.w,
            a: -self.a + self.w * self.b,
            b: -self.b,
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::IDENTITY
    }
}

/// Element `(alpha; g)` of the centrally extended group, acting on
/// `(q, x, t)` as `(q + alpha - w x - w^2 t / 2, x + w t + a, t + b)`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct ExtendedGalileiElement {
    pub alpha: f64,
    pub g: GalileiElement,
}

impl ExtendedGalileiElement {
    pub const IDENTITY: Self = Self {
        alpha: 0.0,
        g: GalileiElement::IDENTITY,
    };

    pub fn new(alpha: f64, g: GalileiElement) -> Self {
        Self { alpha, g }
    }

    /// The element with zero extension parameter over `g`.
    pub fn lift(g: GalileiElement) -> Self {
        Self { alpha: 0.0, g }
    }

    pub fn act(&self, q: f64, x: f64, t: f64) -> (f64, f64, f64) {
        let GalileiElement { w, a, b } = self.g;
        (
            q + self.alpha - w * x - 0.5 * w * w * t,
            x + w * t + a,
            t + b,
        )
    }

    /// `self ∘ first`. The extension parameter picks up the cross terms
    /// `-w_2 a_1 - w_2^2 b_1 / 2` so that the action is a homomorphism.
    pub fn compose(&self, first: &Self) -> Self {
        let w2 = self.g.w;
        Self {
            alpha: first.alpha + self.alpha - w2 * first.g.a - 0.5 * w2 * w2 * first.g.b,
            g: self.g.compose(&first.g),
        }
    }

    pub fn inverse(&self) -> Self {
        let g = self.g.inverse();
        // alpha' solves compose(inverse, self).alpha == 0.
        let alpha = -self.alpha + g.w * self.g.a + 0.5 * g.w * g.w * self.g.b;
        Self { alpha, g }
    }
}

/// `g_{-a} g_{-w} g_{a} g_{w}` in the Galilei group.
pub fn bargmann_loop_element(a: f64, w: f64) -> GalileiElement {
    let chain = [
        GalileiElement::boost(w),
        GalileiElement::translation(a),
        GalileiElement::boost(-w),
        GalileiElement::translation(-a),
    ];
    chain
        .iter()
        .fold(GalileiElement::IDENTITY, |acc, g| g.compose(&acc))
}

/// The same loop in the extended group; it closes only up to a shift of the
/// extra coordinate by `w a`.
pub fn extended_loop_element(a: f64, w: f64) -> ExtendedGalileiElement {
    let chain = [
        GalileiElement::boost(w),
        GalileiElement::translation(a),
        GalileiElement::boost(-w),
        GalileiElement::translation(-a),
    ];
    chain
        .iter()
        .map(|g| ExtendedGalileiElement::lift(*g))
        .fold(ExtendedGalileiElement::IDENTITY, |acc, g| g.compose(&acc))
}
