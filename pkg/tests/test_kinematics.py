import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from _oracles import OPERATIONS, ChainCase, RigidMotion, kinematics_case_errors, relative_error, vee
from sensorsim.kinematics import (
    DegenerateAttitudeError,
    FrameMotion,
    compose_angular_acceleration,
    compose_angular_velocity,
    compose_linear_acceleration,
    compose_linear_velocity,
    compose_position,
    compose_rotation,
    euler_to_rotmat,
    imu_point_kinematics,
    orthonormalize,
    quat_to_rotmat,
    rotation_angle,
    rotmat_to_euler,
    rotmat_to_quat,
    skew,
)

finite = st.floats(min_value=-10, max_value=10, allow_nan=False)
vec3 = st.tuples(finite, finite, finite).map(np.array)
angle = st.floats(min_value=-np.pi, max_value=np.pi)
pitch = st.floats(min_value=-1.5, max_value=1.5)


def test_skew_zero():
    np.testing.assert_array_equal(skew([0, 0, 0]), np.zeros((3, 3)))


def test_skew_example():
    np.testing.assert_allclose(skew([1, 2, 3]) @ np.array([4, 5, 6]), [-3, 6, -3])


@given(v=vec3, w=vec3)
def test_skew_properties(v, w):
    S = skew(v)
    np.testing.assert_array_equal(S, -S.T)
    np.testing.assert_allclose(S @ w, np.cross(v, w), atol=1e-12)
    np.testing.assert_allclose(S @ v, 0.0, atol=1e-12)
    np.testing.assert_allclose(skew(v) @ w, -skew(w) @ v, atol=1e-12)


def test_euler_identity():
    np.testing.assert_array_equal(euler_to_rotmat(0, 0, 0), np.eye(3))


def test_euler_yaw_90_maps_x_to_y():
    np.testing.assert_allclose(euler_to_rotmat(np.pi / 2, 0, 0) @ [1, 0, 0], [0, 1, 0], atol=1e-15)


@settings(max_examples=1000)
@given(psi=angle, theta=pitch, xi=angle)
def test_euler_roundtrip(psi, theta, xi):
    R = euler_to_rotmat(psi, theta, xi)
    np.testing.assert_allclose(R.T @ R, np.eye(3), atol=1e-12)
    assert abs(np.linalg.det(R) - 1.0) < 1e-12
    np.testing.assert_allclose(euler_to_rotmat(*rotmat_to_euler(R)), R, atol=1e-10)
    back = rotmat_to_euler(R)
    assert abs(back[1] - theta) < 1e-10


@pytest.mark.parametrize("theta", [np.pi / 2, -np.pi / 2])
def test_gimbal_lock_raises(theta):
    with pytest.raises(DegenerateAttitudeError):
        rotmat_to_euler(euler_to_rotmat(0.3, theta, 0.1))


@given(psi=angle, theta=pitch, xi=angle)
def test_quaternion_roundtrip(psi, theta, xi):
    R = euler_to_rotmat(psi, theta, xi)
    q = rotmat_to_quat(R)
    assert q[0] >= 0
    assert abs(np.linalg.norm(q) - 1) < 1e-12
    np.testing.assert_allclose(quat_to_rotmat(q), R, atol=1e-12)


def test_rotation_angle():
    assert rotation_angle(euler_to_rotmat(0.25, 0, 0)) == pytest.approx(0.25)


def test_rotation_chain_stays_orthonormal():
    rng = np.random.default_rng(0)
    R = np.eye(3)
    for _ in range(1000):
        R = compose_rotation(R, euler_to_rotmat(*rng.uniform(-0.1, 0.1, 3)))
    assert np.max(np.abs(R.T @ R - np.eye(3))) < 1e-9
    Ro = orthonormalize(R)
    assert np.max(np.abs(Ro - R)) < 1e-9


def test_compose_position_trivial():
    T12 = np.array([1.0, 2.0, 3.0])
    np.testing.assert_array_equal(compose_position(np.zeros(3), np.eye(3), T12), T12)
    T01 = np.array([4.0, 5.0, 6.0])
    np.testing.assert_array_equal(compose_position(T01, euler_to_rotmat(1, 0.2, 0.3), np.zeros(3)), T01)


def test_compose_velocity_examples():
    np.testing.assert_allclose(compose_linear_velocity([1, 2, 3], [4, 5, 6], [0, 0, 0], [7, 8, 9]), [5, 7, 9])
    np.testing.assert_allclose(compose_linear_velocity([0, 0, 0], [0, 0, 0], [0, 0, 1], [1, 0, 0]), [0, 1, 0])


def test_compose_acceleration_examples():
    z = np.zeros(3)
    np.testing.assert_allclose(compose_linear_acceleration([1, 2, 3], [4, 5, 6], z, z, [1, 1, 1], [2, 2, 2]), [5, 7, 9])
    np.testing.assert_allclose(compose_linear_acceleration(z, z, z, [0, 0, 1], [1, 0, 0], z), [-1, 0, 0])


def test_compose_angular_examples():
    w1, w2 = np.array([1.0, 2.0, 3.0]), np.array([-1.0, 0.5, 2.0])
    np.testing.assert_array_equal(compose_angular_velocity(w1, w2), compose_angular_velocity(w2, w1))
    np.testing.assert_allclose(compose_angular_acceleration([0, 0, 0], [1, 1, 1], [0, 0, 0], w2), [1, 1, 1])
    np.testing.assert_allclose(compose_angular_acceleration([0, 0, 0], [0, 0, 0], w1, 2 * w1), 0.0, atol=1e-15)


@pytest.mark.parametrize("op", OPERATIONS)
def test_compositions_match_finite_differences(op):
    worst = kinematics_case_errors(np.random.default_rng(OPERATIONS.index(op)), 100)
    assert worst[op] < 1e-6


def test_oracle_rates_are_consistent():
    # the analytic Euler-rate angular velocity agrees with a differenced attitude
    rng = np.random.default_rng(5)
    m = RigidMotion.random(rng)
    t, h = 1.3, 1e-5
    w_fd = vee((m.R(t + h) - m.R(t - h)) / (2 * h) @ m.R(t).T)
    assert relative_error(m.w(t), w_fd) < 1e-8
    a_fd = (m.w(t + h) - m.w(t - h)) / (2 * h)
    assert relative_error(m.alpha(t), a_fd) < 1e-8


@settings(max_examples=200, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), psi=angle, theta=pitch, xi=angle)
def test_velocity_frame_invariance(seed, psi, theta, xi):
    rng = np.random.default_rng(seed)
    v01, v12, w01, T12 = rng.normal(size=(4, 3))
    R = euler_to_rotmat(psi, theta, xi)
    in_0 = compose_linear_velocity(v01, v12, w01, T12)
    in_1 = compose_linear_velocity(R.T @ v01, R.T @ v12, R.T @ w01, R.T @ T12)
    np.testing.assert_allclose(R @ in_1, in_0, atol=1e-10)


def test_imu_point_kinematics_zero_lever_arm():
    body = FrameMotion(v=[1, 2, 3], a=[0.1, 0.2, 0.3], w=[0.01, 0.02, 0.03], alpha=[1e-3, 0, 0])
    pk = imu_point_kinematics(body, np.zeros(3))
    for got, want in zip(pk, (body.w, body.alpha, body.v, body.a)):
        np.testing.assert_array_equal(got, want)


def test_imu_point_kinematics_pure_spin():
    pk = imu_point_kinematics(FrameMotion(w=[0, 0, 1]), [1, 0, 0])
    np.testing.assert_allclose(pk.a, [-1, 0, 0])
    np.testing.assert_allclose(pk.v, [0, 1, 0])


@given(seed=st.integers(0, 2**32 - 1))
def test_imu_point_kinematics_general(seed):
    rng = np.random.default_rng(seed)
    v, a, w, al, T = rng.normal(size=(5, 3))
    pk = imu_point_kinematics(FrameMotion(v=v, a=a, w=w, alpha=al), T)
    np.testing.assert_allclose(pk.w, w)
    np.testing.assert_allclose(pk.alpha, al)
    np.testing.assert_allclose(pk.v, v + skew(w) @ T)
    np.testing.assert_allclose(pk.a, a + skew(al) @ T + skew(w) @ skew(w) @ T)


def test_imu_point_kinematics_frame_mismatch():
    with pytest.raises(ValueError):
        imu_point_kinematics(FrameMotion(frame="N"), np.zeros(3))


def test_frame_motion_rejects_nonfinite():
    with pytest.raises(ValueError):
        FrameMotion(v=[np.nan, 0, 0])


def test_chain_case_trivial_inner_motion():
    # frame 2 fixed in frame 1 at its origin: composed motion is that of frame 1
    rng = np.random.default_rng(1)
    case = ChainCase.random(rng)
    i = case.inputs(0.7)
    z = np.zeros(3)
    np.testing.assert_allclose(compose_linear_velocity(i["v01"], z, i["w01"], z), i["v01"])
    np.testing.assert_allclose(compose_angular_acceleration(i["alpha01"], z, i["w01"], z), i["alpha01"])
