//! Built-in experiment specs.

use crate::spec::{parse_spec, ExperimentSpec};
use crate::CliError;

const UNIVARIATE_LINK: &str = "\
name = univariate-link

[ring]
char = 32003
vars = x

[modules]
C = quotient(x^3)
M = quotient(x)

[bounds]
bound = 4
window = -4..8

[ops]
op = gb(M)
op = invariants(M)
op = link(C, M)
op = is_linked(C, M)
op = double_link(C, M)
op = cyclic_link(M, C)
op = unmixed(M)
";

const TWISTED_CUBIC: &str = "\
name = twisted-cubic

[ring]
char = 32003
vars = x, y, z, w

[modules]
I = ideal(x*z-y^2, y*w-z^2, x*w-y*z)
M = quotient(I)
C = quotient(x*z-y^2, y*w-z^2)

[bounds]
bound = 4
window = -4..8

[ops]
op = gb(I)
op = betti(M)
op = invariants(M)
op = perfect(M)
op = colon(C, I)
op = link(C, M)
op = is_linked(C, M)
op = double_link(C, M)
op = cyclic_link(I, C)
op = local_cohomology(M, 1)
op = unmixed(M)
";

const MIXED_IDEAL_NEGATIVE: &str = "\
name = mixed-ideal-negative

[ring]
char = 32003
vars = x, y

[modules]
M = quotient(x^2, x*y)
C = quotient(x^2)

[bounds]
bound = 4
window = -4..8

[ops]
op = invariants(M)
op = unmixed(M)
op = is_linked(C, M)
op = link(C, M)
op = double_link(C, M)
";

const SEMIGROUP_345: &str = "\
name = semigroup-345

[ring]
char = 32003
vars = x, y, z
defining = y^2-x*z, y*z, z^2

[modules]
M = quotient(x)
C = quotient(x^2)

[k]
kind = canonical

[bounds]
bound = 5
window = -4..8

[ops]
op = invariants(R)
op = hf(K)
op = semidualizing()
op = bass(R, 1)
op = gk_perfect(M)
op = link(C, M)
op = cyclic_link(M, C)
op = class(bass, K)
op = pk_dim(K)
";

const DIRECT_SUM_SELF_LINK: &str = "\
name = direct-sum-self-link

[ring]
char = 32003
vars = x, y

[modules]
M = quotient(x)
N = quotient(y^2)

[bounds]
bound = 4
window = -4..8

[ops]
op = self_link(M)
op = self_link(M, N)
op = horizontal(M)
";

const FOXBY_ROUNDTRIP: &str = "\
name = foxby-roundtrip

[ring]
char = 32003
vars = x, y, z
defining = y^2-x*z, y*z, z^2

[modules]
P = free(0, 1)
Mx = quotient(x)
Kx = tensor(Mx, K)

[k]
kind = canonical

[bounds]
bound = 3
window = -4..8

[ops]
op = foxby(P)
op = foxby(K)
op = foxby(Kx)
op = class(auslander, P)
op = class(bass, K)
op = class(bass, Kx)
op = pk_dim(K)
op = pk_dim(Kx)
";

const ADJOINT_TRANSFER: &str = "\
name = adjoint-transfer

[ring]
char = 32003
vars = x, y, z
defining = y^2-x*z, y*z, z^2

[modules]
C = quotient(x^2)
M = quotient(x)
CK = tensor(C, K)
MK = tensor(M, K)

[k]
kind = canonical

[bounds]
bound = 3
window = -4..8

[ops]
op = adjoint(C, M)
op = colink(CK, MK)
op = pk_dim(MK)
";

const DEPTH_FORMULA: &str = "\
name = depth-formula

[ring]
char = 32003
vars = x, y, z, w

[modules]
M = quotient(x*z-y^2, y*w-z^2, x*w-y*z)
C = quotient(x*z-y^2, y*w-z^2)

[bounds]
bound = 4
window = -4..8

[ops]
op = depth_formula(C, M)
";

const SCHENZEL: &str = "\
name = schenzel

[ring]
char = 32003
vars = x, y, z, w

[modules]
M = quotient(x*z-y^2, y*w-z^2, x*w-y*z)
C = quotient(x*z-y^2, y*w-z^2)
N = link(C, M)
S = quotient(x*z, x*w, y*z, y*w)
D = quotient(x*z, y*w)
L = link(D, S)

[bounds]
bound = 4
window = -4..8

[ops]
op = schenzel(M, N, 1..2)
op = schenzel(S, L, 1..2)
op = duality(M, N, 1..1)
op = duality(S, L, 1..1)
op = local_cohomology(S, 1)
op = local_cohomology(L, 1)
op = generalized_cm(S)
";

const EVEN_LIAISON_EXT: &str = "\
name = even-liaison-ext

[ring]
char = 32003
vars = x, y, z, w

[modules]
M = quotient(x*z-y^2, y*w-z^2, x*w-y*z)
C1 = ideal(x*z-y^2, y*w-z^2)
C2 = ideal(x*y, z*w)
S = quotient(x*z, x*w, y*z, y*w)
D1 = ideal(x*z, y*w)
D2 = ideal(x*y, z*w)

[bounds]
bound = 4
window = -4..8

[ops]
op = walk(M, C1, C2)
op = walk(S, D1, D2)
";

const GALLERIES: &[(&str, &str)] = &[
    ("univariate-link", UNIVARIATE_LINK),
    ("twisted-cubic", TWISTED_CUBIC),
    ("mixed-ideal-negative", MIXED_IDEAL_NEGATIVE),
    ("semigroup-345", SEMIGROUP_345),
    ("direct-sum-self-link", DIRECT_SUM_SELF_LINK),
    ("foxby-roundtrip", FOXBY_ROUNDTRIP),
    ("adjoint-transfer", ADJOINT_TRANSFER),
    ("depth-formula", DEPTH_FORMULA),
    ("schenzel", SCHENZEL),
    ("even-liaison-ext", EVEN_LIAISON_EXT),
];

pub fn gallery_names() -> Vec<&'static str> {
    GALLERIES.iter().map(|g| g.0).collect()
}

pub fn gallery_text(name: &str) -> Result<&'static str, CliError> {
    GALLERIES.iter().find(|g| g.0 == name).map(|g| g.1).ok_or_else(|| CliError::UnknownGallery(name.to_string()))
}

pub fn gallery(name: &str) -> Result<ExperimentSpec, CliError> {
    parse_spec(gallery_text(name)?)
}
