"""Sign conventions, fixed once for the whole engine.

Components
    A k-vector is stored as ``Q = sum_{i1<...<ik} Q^{i1...ik} d_i1 ^ ... ^ d_ik``
    (likewise for forms with ``dz``).  ``Q^{I}`` for an unsorted tuple is the
    sorted component times the permutation sign, so these are the fully
    antisymmetric components of the usual ``1/k!`` expansion.

Interior products
    Contraction fills the *first* slots:
    ``(i(P) k)_{J} = sum_I P^I k_{IJ}`` and ``(i(a) Q)^{J} = sum_I a_I Q^{IJ}``.
    Hence ``i(dx)(dx^dy) = dy`` and ``i(a)(X^Y) = a(X) Y - a(Y) X``.

Sharp and flat
    ``sharp(P, a) = i(a) P``, i.e. ``(#a)^j = a_i P^{ij}``; ``flat(W, X) = i(X) W``.
    Hamiltonian fields are ``X_f = #df + f E`` and brackets are
    ``{f, g} = P(df, dg) = P^{ij} d_i f d_j g = X_f g`` (Poisson case).

Schouten-Nijenhuis bracket
    With odd symbols ``xi_i`` standing for ``d/dz^i``,
    ``[P, Q] = sum_i (P <d/dxi_i) (d_i Q) - (-1)^{(p-1)(q-1)} (Q <d/dxi_i) (d_i P)``
    where ``<d/dxi`` is the right derivative.  This gives the Lie bracket on
    vector fields, ``[X, f] = X f``, ``L_X Q = [X, Q]`` and
    ``[P, P]^{ijk} = 2 sum_cycl P^{il} d_l P^{jk}`` for bivectors, so a Jacobi
    pair satisfies ``[L, L] = -2 E ^ L`` and ``L_E L = 0``.

Forms to multivectors
    ``sharp_form`` is the multiplicative extension of ``#``; for Poisson ``P``
    it satisfies ``-[P, sharp_form(k)] = sharp_form(dk)``.  ``sharp_cochain``
    rescales degree k by ``(-1)^(k+1)`` so that, with ``dP = -[P, .]``,
    ``dP o sharp = -sharp o d`` on the nose.

Symplectic / l.c.s.
    The l.c.s. verifier contracts in the second slot, ``#'a = L(., a) =
    -sharp(L, a)``, and requires ``#' = flat^{-1}`` and ``E = #'w``; with the
    first-slot ``sharp`` the pair ``(L, #w)`` is not Jacobi in dimension 4 and
    up.  The symplectization check on ``M x R`` uses ``#_P o flat_W = -Id``,
    which is the same relation read with the first slot.
"""

# Multiplier applied to the first-slot contraction for a contracting tensor of degree p.
def interior_sign(p: int) -> int:
    return 1


DEFAULT_TAU = "tau"
DOT_SUFFIX = "_dot"
