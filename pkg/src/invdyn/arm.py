"""Planar n-link manipulator: exact dynamics and the linear-in-parameters regressor.

The arm lives in a plane. Joint angles are measured from the plane's first
axis; gravity (when nonzero) pulls along the negative second axis, so a
vertical plane uses ``gravity=g`` and a horizontal plane ``gravity=0``.

Torques are computed by a planar recursive Newton-Euler pass, which is exact
for rigid links. Viscous and Coulomb friction are added on top and are
deliberately *not* part of the regressor basis: they play the role of
unmodeled dynamics for the parametric model class.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

__all__ = [
    "ArmModel",
    "inverse_dynamics",
    "rbd_regressor",
    "mass_matrix",
    "gravity_torque",
]


def _as_float_array(values, n, name):
    arr = np.atleast_1d(np.asarray(values, dtype=float))
    if arr.shape != (n,):
        raise ValueError(f"{name} must have shape ({n},), got {arr.shape}")
    return arr


@dataclass(frozen=True)
class ArmModel:
    """Physical description of a planar serial chain.

    Parameters
    ----------
    n_dof : int
        Number of revolute joints (>= 1).
    link_lengths : array_like
        Link lengths in meters, one per link, strictly positive.
    link_masses : array_like
        Link masses in kg, strictly positive.
    link_inertias : array_like
        Rotational inertia about each link's center of mass, kg m^2.
    com_offsets : array_like
        Distance from each joint to the link's center of mass, meters.
    gravity : float
        In-plane gravity magnitude, m/s^2 (0 for a horizontal plane).
    friction_viscous, friction_coulomb : array_like
        Per-joint friction coefficients, >= 0. Coulomb torque uses
        sign(qd) with sign(0) = 0.
    """

    n_dof: int
    link_lengths: np.ndarray
    link_masses: np.ndarray
    link_inertias: np.ndarray
    com_offsets: np.ndarray
    gravity: float = 9.81
    friction_viscous: np.ndarray = field(default=None)
    friction_coulomb: np.ndarray = field(default=None)

    def __post_init__(self):
        n = int(self.n_dof)
        if n < 1:
            raise ValueError("n_dof must be >= 1")
        object.__setattr__(self, "n_dof", n)
        for name in ("link_lengths", "link_masses", "link_inertias", "com_offsets"):
            arr = _as_float_array(getattr(self, name), n, name)
            if np.any(arr <= 0):
                raise ValueError(f"{name} must be strictly positive")
            object.__setattr__(self, name, arr)
        if np.any(self.com_offsets > self.link_lengths):
            raise ValueError("com_offsets cannot exceed link_lengths")
        for name in ("friction_viscous", "friction_coulomb"):
            val = getattr(self, name)
            arr = np.zeros(n) if val is None else _as_float_array(val, n, name)
            if np.any(arr < 0):
                raise ValueError(f"{name} must be >= 0")
            object.__setattr__(self, name, arr)
        object.__setattr__(self, "gravity", float(self.gravity))

    def frictionless(self) -> "ArmModel":
        zeros = np.zeros(self.n_dof)
        return replace(self, friction_viscous=zeros, friction_coulomb=zeros)

    def with_gravity(self, g: float) -> "ArmModel":
        return replace(self, gravity=g)

    @property
    def base_params(self) -> np.ndarray:
        """True base-parameter vector matching :func:`rbd_regressor`.

        1 link (p=2)::

            pi = [I1 + m1*lc1**2,  m1*lc1]

        2 links (p=5)::

            pi = [I1 + m1*lc1**2 + m2*l1**2,   # shoulder inertia group
                  I2 + m2*lc2**2,              # elbow inertia group
                  m2*l1*lc2,                   # inertia/velocity coupling group
                  m1*lc1 + m2*l1,              # shoulder mass-moment (gravity)
                  m2*lc2]                      # elbow mass-moment (gravity)
        """
        m, lc, inert, ln = (
            self.link_masses,
            self.com_offsets,
            self.link_inertias,
            self.link_lengths,
        )
        if self.n_dof == 1:
            return np.array([inert[0] + m[0] * lc[0] ** 2, m[0] * lc[0]])
        if self.n_dof == 2:
            return np.array(
                [
                    inert[0] + m[0] * lc[0] ** 2 + m[1] * ln[0] ** 2,
                    inert[1] + m[1] * lc[1] ** 2,
                    m[1] * ln[0] * lc[1],
                    m[0] * lc[0] + m[1] * ln[0],
                    m[1] * lc[1],
                ]
            )
        raise NotImplementedError("base parameters implemented for n_dof <= 2")

    def to_dict(self) -> dict:
        return {
            "n_dof": self.n_dof,
            "link_lengths": self.link_lengths.tolist(),
            "link_masses": self.link_masses.tolist(),
            "link_inertias": self.link_inertias.tolist(),
            "com_offsets": self.com_offsets.tolist(),
            "gravity": self.gravity,
            "friction_viscous": self.friction_viscous.tolist(),
            "friction_coulomb": self.friction_coulomb.tolist(),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ArmModel":
        return cls(**d)


def _split_x(x, n):
    x = np.asarray(x, dtype=float)
    if x.shape[-1] != 3 * n:
        raise ValueError(f"input location must have {3 * n} components, got {x.shape[-1]}")
    return x[..., :n], x[..., n : 2 * n], x[..., 2 * n :]


def inverse_dynamics(x, arm: ArmModel, gravity: float | None = None) -> np.ndarray:
    """Joint torques for one input location or a batch of them.

    Parameters
    ----------
    x : array_like, shape (3n,) or (N, 3n)
        Stacked [q, qd, qdd].
    arm : ArmModel
    gravity : float, optional
        Override for the arm's in-plane gravity (used when the same arm is
        driven in planes with different orientation).

    Returns
    -------
    ndarray, shape (n,) or (N, n)
        M(q) qdd + C(q, qd) qd + G(q) plus friction torques.
    """
    n = arm.n_dof
    q, qd, qdd = _split_x(x, n)
    g = arm.gravity if gravity is None else float(gravity)

    theta = np.cumsum(q, axis=-1)
    omega = np.cumsum(qd, axis=-1)
    alpha = np.cumsum(qdd, axis=-1)
    c, s = np.cos(theta), np.sin(theta)

    # Forward pass: planar accelerations. The base "accelerates" upward at g,
    # which folds gravity into the same recursion.
    shape = q.shape[:-1]
    ax_prev = np.zeros(shape)
    ay_prev = np.full(shape, g)
    acx = np.empty(q.shape)
    acy = np.empty(q.shape)
    for i in range(n):
        # tangential (alpha x r) and centripetal (-omega^2 r) terms for unit radius
        tx = -alpha[..., i] * s[..., i] - omega[..., i] ** 2 * c[..., i]
        ty = alpha[..., i] * c[..., i] - omega[..., i] ** 2 * s[..., i]
        acx[..., i] = ax_prev + arm.com_offsets[i] * tx
        acy[..., i] = ay_prev + arm.com_offsets[i] * ty
        ax_prev = ax_prev + arm.link_lengths[i] * tx
        ay_prev = ay_prev + arm.link_lengths[i] * ty

    # Backward pass: joint forces/torques.
    tau = np.empty(q.shape)
    fx_next = np.zeros(shape)
    fy_next = np.zeros(shape)
    for i in range(n - 1, -1, -1):
        m_i = arm.link_masses[i]
        fx_i = m_i * acx[..., i] + fx_next
        fy_i = m_i * acy[..., i] + fy_next
        lc_i, l_i = arm.com_offsets[i], arm.link_lengths[i]
        # torque about joint i: link inertia + moments of the COM force and
        # of the reaction transmitted from link i+1
        tau[..., i] = (
            arm.link_inertias[i] * alpha[..., i]
            + lc_i * (c[..., i] * m_i * acy[..., i] - s[..., i] * m_i * acx[..., i])
            + (l_i * (c[..., i] * fy_next - s[..., i] * fx_next))
        )
        if i < n - 1:
            tau[..., i] += tau_next
        tau_next = tau[..., i]
        fx_next, fy_next = fx_i, fy_i

    tau += arm.friction_viscous * qd + arm.friction_coulomb * np.sign(qd)
    return tau


def rbd_regressor(x, link_lengths, gravity: float) -> np.ndarray:
    """Regressor psi(x) with torques = psi(x)^T pi, linear in the base parameters.

    Depends only on the kinematic geometry (link lengths, gravity), never on
    masses or inertias. Shape is (p, n) for a single x, (N, p, n) for a batch;
    the basis is documented on :attr:`ArmModel.base_params`.
    """
    link_lengths = np.atleast_1d(np.asarray(link_lengths, dtype=float))
    n = link_lengths.shape[0]
    q, qd, qdd = _split_x(x, n)
    g = float(gravity)
    shape = q.shape[:-1]

    if n == 1:
        psi = np.zeros(shape + (2, 1))
        psi[..., 0, 0] = qdd[..., 0]
        psi[..., 1, 0] = g * np.cos(q[..., 0])
        return psi

    if n == 2:
        q1, q2 = q[..., 0], q[..., 1]
        qd1, qd2 = qd[..., 0], qd[..., 1]
        qdd1, qdd2 = qdd[..., 0], qdd[..., 1]
        c2, s2 = np.cos(q2), np.sin(q2)
        psi = np.zeros(shape + (5, 2))
        psi[..., 0, 0] = qdd1
        psi[..., 1, 0] = qdd1 + qdd2
        psi[..., 2, 0] = c2 * (2.0 * qdd1 + qdd2) - s2 * (qd2**2 + 2.0 * qd1 * qd2)
        psi[..., 3, 0] = g * np.cos(q1)
        psi[..., 4, 0] = g * np.cos(q1 + q2)
        psi[..., 1, 1] = qdd1 + qdd2
        psi[..., 2, 1] = c2 * qdd1 + s2 * qd1**2
        psi[..., 4, 1] = g * np.cos(q1 + q2)
        return psi

    raise NotImplementedError("regressor implemented for 1- and 2-link arms")


def mass_matrix(q, arm: ArmModel) -> np.ndarray:
    """Inertia matrix M(q), assembled column-by-column from the exact dynamics."""
    q = np.asarray(q, dtype=float)
    n = arm.n_dof
    frictionless = arm.frictionless()
    cols = []
    for j in range(n):
        x = np.concatenate([q, np.zeros(n), np.eye(n)[j]])
        cols.append(inverse_dynamics(x, frictionless, gravity=0.0))
    return np.stack(cols, axis=-1)


def gravity_torque(q, arm: ArmModel, gravity: float | None = None) -> np.ndarray:
    """G(q): torques with zero velocity and acceleration (friction excluded)."""
    q = np.asarray(q, dtype=float)
    x = np.concatenate([q, np.zeros(2 * arm.n_dof)])
    return inverse_dynamics(x, arm.frictionless(), gravity=gravity)
