import io
import subprocess
import sys

from thurston4.cli import main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_expand():
    assert run("expand", "7/12") == (0, "A⁻¹ B⁻¹ B⁻¹ A⁻¹ | terminal 1/0\n")
    code, text = run("expand", "7/12", "--labels")
    assert "word ABBA" in text


def test_sigma_orbit():
    code, text = run("sigma", "203/356", "--orbit")
    assert code == 0
    assert text.splitlines() == [
        "tail [203/356, -50/33, -13/6, 6/1, -1/2]",
        "cycle [0/1, 1/0]",
        "steps 5",
    ]


def test_sigma_variants():
    assert run("sigma", "1/2", "--oracle", "both") == (0, "decomp: 0/1\nstab: -2/1\n")
    assert run("sigma", "1/1", "--twist", "b") == (0, "-1/1\n")


def test_twist():
    code, text = run("twist", "b")
    assert code == 0 and text.splitlines()[0] == "RationalG"
    code, text = run("twist", "ababa")
    assert text.splitlines()[0] == "Obstructed{2}"


def test_phi_rewrite_coset():
    assert run("phi", "aaBABaaB") == (0, "bAbb\n")
    assert run("phi", "bab", "--bar") == (0, "baba\n")
    assert run("phi", "bb", "--psi-bar") == (0, "aB\n")
    assert run("rewrite", "abbAB") == (0, "g3^-1 g1^-1\n")
    assert run("coset", "A")[1].splitlines()[:2] == ["left AH", "right HA"]


def test_wreath(tmp_path):
    code, text = run("wreath", "phi-moduli", "bababa", "--restrict", "3")
    assert text.splitlines() == ["<<ba, ba, bababa, ab>> id", "restriction bababa"]
    code, text = run("wreath", "phi-f-b2", "a", "--nucleus")
    assert "Contracting" in text
    f = tmp_path / "rec.txt"
    f.write_text("degree 2\ncontext moduli\ngen a = <e, a> (1 2)\ngen b = <e, e>\n")
    code, text = run("wreath", str(f), "a", "--level", "2")
    assert code == 0 and "order 4" in text
    assert "level 2 (1 3 2 4)" in text


def test_plot_csv(tmp_path):
    path = tmp_path / "out.csv"
    assert run("plot", "--height", "3", "--out", str(path))[0] == 0
    lines = path.read_text().splitlines()
    assert lines[0] == "p,q,sp,sq"
    assert lines[1] == "1,0,0,1"
    code, text = run("plot", "--height", "3", "--out", "-", "--jobs", "2")
    assert text.splitlines() == lines


def test_attractor_and_fibers():
    code, text = run("attractor", "--height", "10")
    assert code == 0 and "exceptions 0" in text
    code, text = run("fibers", "1/0", "--count", "2")
    assert text.splitlines() == ["0/1 -> 1/0", "-4/15 -> 1/0"]


def test_exit_codes(capsys):
    assert run("phi", "a")[0] == 1                    # not in H
    assert run("sigma", "1/0x")[0] == 2
    assert run("frobnicate")[0] == 2
    assert run("attractor", "--height", "0")[0] == 2
    assert run("wreath", "missing-file", "a")[0] == 1
    assert run("wreath", "phi-f", "a", "--level", "20")[0] == 1


def test_deterministic_output():
    assert run("attractor", "--height", "12", "--twist", "A") == run(
        "attractor", "--height", "12", "--twist", "A")


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "thurston4", "expand", "7/12"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout == "A⁻¹ B⁻¹ B⁻¹ A⁻¹ | terminal 1/0\n"
