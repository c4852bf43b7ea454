"""
Gain correspondence unit tests.
"""

import numpy as np
import pytest

from modules.classic import classic_controller
from modules.equivalence import equivalence_verifier
from modules.equivalence import gain_correspondence
from modules.intelligent import intelligent_controller


H = 0.01
KINDS = list(intelligent_controller.IntelligentKind)


def make_config(
    nu: int, alpha: float, k_p: float, k_i: float = 0.0, k_d: float = 0.0
) -> intelligent_controller.IntelligentConfig:
    """
    Configuration that must be valid.
    """
    result, config = intelligent_controller.IntelligentConfig.create(nu, alpha, k_p, k_i, k_d)
    assert result
    assert config is not None

    return config


def mapped_gains(
    kind: intelligent_controller.IntelligentKind,
    config: intelligent_controller.IntelligentConfig,
    h: float = H,
) -> gain_correspondence.GainCorrespondence:
    """
    Correspondence that must exist.
    """
    result, correspondence = gain_correspondence.map_gains(kind, config, h)
    assert result
    assert correspondence is not None

    return correspondence


class TestMapGains:
    """
    Test suite for map_gains.
    """

    def test_i_p(self) -> None:
        """
        kp = -1 / (alpha h), ki = K_P / (alpha h).
        """
        correspondence = mapped_gains(
            intelligent_controller.IntelligentKind.I_P, make_config(1, 1.0, 6.0)
        )

        # Assertions
        assert correspondence.classic_kind == classic_controller.ClassicKind.PI
        assert correspondence.mapped.as_dict() == pytest.approx(
            {"kp": -100.0, "ki": 600.0, "kii": 0.0, "kd": 0.0}
        )

    def test_i_pd(self) -> None:
        """
        The derivative slot carries the model inversion.
        """
        correspondence = mapped_gains(
            intelligent_controller.IntelligentKind.I_PD, make_config(2, 1.0, 6.0, k_d=4.0)
        )

        assert correspondence.classic_kind == classic_controller.ClassicKind.PID
        assert correspondence.mapped.as_dict() == pytest.approx(
            {"kp": 400.0, "ki": 600.0, "kii": 0.0, "kd": -100.0}
        )

    def test_i_pi(self) -> None:
        """
        i-PI pairs with the double integral structure.
        """
        correspondence = mapped_gains(
            intelligent_controller.IntelligentKind.I_PI, make_config(1, 1.0, 6.0, 9.0)
        )

        assert correspondence.classic_kind == classic_controller.ClassicKind.PII2
        assert correspondence.mapped.as_dict() == pytest.approx(
            {"kp": -100.0, "ki": 600.0, "kii": 900.0, "kd": 0.0}
        )

    def test_i_pid(self) -> None:
        """
        Every slot populated.
        """
        correspondence = mapped_gains(
            intelligent_controller.IntelligentKind.I_PID, make_config(2, 1.0, 6.0, 9.0, 4.0)
        )

        assert correspondence.classic_kind == classic_controller.ClassicKind.PII2D
        assert correspondence.mapped.as_dict() == pytest.approx(
            {"kp": 400.0, "ki": 600.0, "kii": 900.0, "kd": -100.0}
        )

    @pytest.mark.parametrize("h", [0.0, -0.01, float("nan")])
    def test_invalid_h(self, h: float) -> None:
        """
        Sampling interval must be positive.
        """
        result, correspondence = gain_correspondence.map_gains(
            intelligent_controller.IntelligentKind.I_P, make_config(1, 1.0, 6.0), h
        )

        assert not result
        assert correspondence is None

    def test_incompatible_structure(self) -> None:
        """
        An i-P cannot run a configuration with K_I, nor a second order one.
        """
        result, _ = gain_correspondence.map_gains(
            intelligent_controller.IntelligentKind.I_P, make_config(1, 1.0, 6.0, 9.0), H
        )
        assert not result

        result, _ = gain_correspondence.map_gains(
            intelligent_controller.IntelligentKind.I_P, make_config(2, 1.0, 6.0), H
        )
        assert not result


class TestGainProperties:
    """
    Sign, sampling interval and bijection properties of the correspondence.
    """

    @pytest.mark.parametrize("kind", KINDS)
    def test_inversion_slot_negative(self, kind: intelligent_controller.IntelligentKind) -> None:
        """
        With alpha > 0 the model inversion gain is negative.
        """
        generator = np.random.default_rng(17)
        for _ in range(50):
            config, h = equivalence_verifier.random_config(kind, generator)
            if config.alpha < 0.0:
                config = make_config(config.nu, -config.alpha, config.k_p, config.k_i, config.k_d)

            mapped = mapped_gains(kind, config, h).mapped

            inversion_gain = mapped.kp if kind.nu == 1 else mapped.kd
            assert inversion_gain < 0.0

    def test_grows_as_h_shrinks(self) -> None:
        """
        |kp| of the i-P counterpart increases without bound as h goes to 0.
        """
        config = make_config(1, 1.0, 6.0)
        grid = [0.1, 0.05, 0.01, 0.005, 0.001, 1e-4, 1e-6]

        magnitudes = [
            abs(mapped_gains(intelligent_controller.IntelligentKind.I_P, config, h).mapped.kp)
            for h in grid
        ]

        assert all(later > earlier for earlier, later in zip(magnitudes, magnitudes[1:]))
        assert magnitudes[-1] == pytest.approx(1e6)

    @pytest.mark.parametrize("kind", KINDS)
    def test_bijection(self, kind: intelligent_controller.IntelligentKind) -> None:
        """
        Inverting the classic gains and mapping again reproduces them.
        """
        generator = np.random.default_rng(23)
        for _ in range(50):
            config, h = equivalence_verifier.random_config(kind, generator)
            correspondence = mapped_gains(kind, config, h)

            result, inverted = gain_correspondence.invert_gains(
                correspondence.classic_kind, correspondence.mapped, h
            )
            assert result
            recovered, alpha_h = inverted

            # Assertions
            assert alpha_h == pytest.approx(config.alpha * h, rel=1e-12)
            assert (recovered.k_p, recovered.k_i, recovered.k_d) == pytest.approx(
                (config.k_p, config.k_i, config.k_d), rel=1e-12, abs=1e-12
            )
            remapped = mapped_gains(kind, recovered, h).mapped
            assert remapped.as_dict() == pytest.approx(
                correspondence.mapped.as_dict(), rel=1e-12, abs=1e-12
            )

    def test_invert_without_inversion_term(self) -> None:
        """
        A PI with kp = 0 has no intelligent counterpart.
        """
        result, gains = classic_controller.ClassicGains.create(0.0, 600.0)
        assert result

        result, inverted = gain_correspondence.invert_gains(
            classic_controller.ClassicKind.PI, gains, H
        )

        assert not result
        assert inverted is None

    def test_invert_extra_gain(self) -> None:
        """
        A PI counterpart cannot carry a derivative gain.
        """
        result, gains = classic_controller.ClassicGains.create(-100.0, 600.0, kd=1.0)
        assert result

        result, _ = gain_correspondence.invert_gains(classic_controller.ClassicKind.PI, gains, H)

        assert not result
