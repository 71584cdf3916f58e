import numpy as np
import pytest

from moisttex.data import read_labels_csv
from moisttex.features import fps_features
from moisttex.features.fps import N_RADIAL
from moisttex.synth import (
    CLASS_SPECS,
    IDENTITY_DOMAIN,
    SHIFT_LEVELS,
    DomainSpec,
    generate_image,
    generate_scenario,
)


class TestGenerateImage:
    def test_deterministic(self):
        a = generate_image(IDENTITY_DOMAIN, CLASS_SPECS["dry"], 32, seed=9)
        b = generate_image(IDENTITY_DOMAIN, CLASS_SPECS["dry"], 32, seed=9)
        assert np.array_equal(a, b)
        assert a.dtype == np.uint8 and a.shape == (32, 32)

    def test_shifted_domain_differs(self):
        a = generate_image(IDENTITY_DOMAIN, CLASS_SPECS["wet"], 32, seed=3)
        b = generate_image(SHIFT_LEVELS["strong"], CLASS_SPECS["wet"], 32, seed=3)
        assert not np.array_equal(a, b)

    def test_high_frequency_class_has_more_high_band_energy(self):
        # dry (low frequency) vs wet (high frequency) under the identity domain
        wins = 0
        for seed in range(20):
            low = generate_image(IDENTITY_DOMAIN, CLASS_SPECS["dry"], 64, seed=seed)
            high = generate_image(IDENTITY_DOMAIN, CLASS_SPECS["wet"], 64,
                                  seed=seed + 1000)
            r_low = fps_features(low)[:N_RADIAL]
            r_high = fps_features(high)[:N_RADIAL]
            upper = slice(2, N_RADIAL)  # bins past the dry dominant band
            frac_low = r_low[upper].sum() / r_low.sum()
            frac_high = r_high[upper].sum() / r_high.sum()
            wins += int(frac_high > frac_low)
        assert wins == 20

    def test_size_validation(self):
        with pytest.raises(ValueError):
            generate_image(IDENTITY_DOMAIN, CLASS_SPECS["dry"], 16, seed=0)

    def test_domain_spec_validation(self):
        with pytest.raises(ValueError):
            DomainSpec(name="bad", contrast_gain=0.0)
        with pytest.raises(ValueError):
            DomainSpec(name="bad", gamma=-1.0)


class TestGenerateScenario:
    def test_layout_and_counts(self, tmp_path):
        info = generate_scenario("none", per_class=10, seed=1, out_dir=tmp_path,
                                 size=32)
        for domain in ("source", "target"):
            ddir = tmp_path / domain
            pngs = sorted(ddir.glob("*.png"))
            assert len(pngs) == 30
            rows = read_labels_csv(ddir / "labels.csv")
            assert len(rows) == 30
            assert all(r[1] == domain for r in rows)
            labels = [r[2] for r in rows]
            assert labels.count("dry") == labels.count("wet") == 10
        assert info["domains"]["source"]["images"] == 30

    def test_deterministic_bytes(self, tmp_path):
        a_dir, b_dir = tmp_path / "a", tmp_path / "b"
        generate_scenario("strong", per_class=10, seed=4, out_dir=a_dir, size=32)
        generate_scenario("strong", per_class=10, seed=4, out_dir=b_dir, size=32)
        for rel in sorted(p.relative_to(a_dir) for p in a_dir.rglob("*") if p.is_file()):
            assert (a_dir / rel).read_bytes() == (b_dir / rel).read_bytes(), rel

    def test_none_shift_source_target_same_transform(self, tmp_path):
        generate_scenario("none", per_class=10, seed=2, out_dir=tmp_path, size=32)
        src = sorted((tmp_path / "source").glob("*.png"))
        tgt = sorted((tmp_path / "target").glob("*.png"))
        # same distribution, different draws
        assert [p.name for p in src] == [p.name for p in tgt]
        assert any(a.read_bytes() != b.read_bytes() for a, b in zip(src, tgt))

    def test_invalid_arguments(self, tmp_path):
        with pytest.raises(ValueError):
            generate_scenario("extreme", per_class=10, seed=0, out_dir=tmp_path)
        with pytest.raises(ValueError):
            generate_scenario("none", per_class=5, seed=0, out_dir=tmp_path)
