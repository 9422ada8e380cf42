"""API endpoint tests."""
import pytest
import pytest_asyncio
from httpx import AsyncClient, ASGITransport

from api.main import app


JORDAN = {"n": 2, "entries": [[[0, 0], [1, 0]], [[0, 0], [0, 0]]]}


@pytest_asyncio.fixture
async def client():
    """Async client bound to the application."""
    async with AsyncClient(transport=ASGITransport(app=app), base_url="http://test") as ac:
        yield ac


class TestServiceEndpoints:
    """Tests for the health and root endpoints."""

    @pytest.mark.asyncio
    async def test_health(self, client):
        """Test the health check."""
        response = await client.get("/health")
        assert response.status_code == 200
        assert response.json() == {"status": "healthy"}

    @pytest.mark.asyncio
    async def test_root(self, client):
        """Test the root endpoint lists the docs."""
        response = await client.get("/")
        assert response.status_code == 200
        assert response.json()["docs"] == "/docs"


class TestSpectraEndpoints:
    """Tests for the /spectra routes."""

    @pytest.mark.asyncio
    async def test_radius(self, client):
        """Test the Jordan block radius."""
        response = await client.post("/spectra/radius", json={"matrix": JORDAN, "p": 2})
        assert response.status_code == 200
        body = response.json()
        assert body["radius"] == pytest.approx(0.5, abs=1e-3)
        assert body["angles"] == 360

    @pytest.mark.asyncio
    async def test_bounds_maximum_norm(self, client):
        """Test s_n^0 of the Jordan block under the maximum norm."""
        response = await client.post("/spectra/bounds", json={"matrix": JORDAN, "p": "inf", "theta": 0.0})
        assert response.status_code == 200
        assert response.json()["value"] == pytest.approx(1.0, abs=1e-9)

    @pytest.mark.asyncio
    async def test_region_with_svg(self, client):
        """Test the region document and its SVG."""
        payload = {"matrix": JORDAN, "angles": 24, "svg": True}
        response = await client.post("/spectra/region", json=payload)
        assert response.status_code == 200
        body = response.json()
        assert len(body["support"]) == 24
        assert "compact" in body["class"]["flags"]
        assert "<svg" in body["svg"]

    @pytest.mark.asyncio
    async def test_certify_failure_is_ok(self, client):
        """Test a failed certificate is reported with status 200."""
        payload = {"matrix": JORDAN, "theta": 0.0, "omega": 0.0, "n_distances": 10, "n_tangential": 4}
        response = await client.post("/spectra/certify", json=payload)
        assert response.status_code == 200
        body = response.json()
        assert body["passed"] is False
        assert body["failures"]

    @pytest.mark.asyncio
    async def test_curve(self, client):
        """Test the curve document on a short grid."""
        payload = {"matrix": JORDAN, "p": 1, "t_min": 0.1, "t_max": 1.0, "points": 5}
        response = await client.post("/spectra/curve", json=payload)
        assert response.status_code == 200
        body = response.json()
        assert len(body["t"]) == 5
        assert body["norm"] == pytest.approx([1.0 + t for t in body["t"]])

    @pytest.mark.asyncio
    async def test_hildebrandt(self, client):
        """Test the renorm report."""
        payload = {"matrix": JORDAN, "omegas": [1.0, 0.5], "angles": 16, "fan": 4}
        response = await client.post("/spectra/hildebrandt", json=payload)
        assert response.status_code == 200
        body = response.json()
        assert [e["omega"] for e in body["entries"]] == [1.0, 0.5]
        assert body["monotone"] is True

    @pytest.mark.asyncio
    async def test_hildebrandt_zero_omega(self, client):
        """Test omega at the abscissa is an input error."""
        payload = {"matrix": JORDAN, "omegas": [1.0, 0.0], "angles": 16}
        response = await client.post("/spectra/hildebrandt", json=payload)
        assert response.status_code == 400
        assert response.json()["error"] == "Invalid input"

    @pytest.mark.asyncio
    async def test_increasing_omegas(self, client):
        """Test omega order validation."""
        payload = {"matrix": JORDAN, "omegas": [0.5, 1.0]}
        response = await client.post("/spectra/hildebrandt", json=payload)
        assert response.status_code == 422

    @pytest.mark.asyncio
    async def test_invalid_p(self, client):
        """Test p below 1 is rejected."""
        response = await client.post("/spectra/radius", json={"matrix": JORDAN, "p": 0.5})
        assert response.status_code == 422

    @pytest.mark.asyncio
    async def test_ragged_matrix(self, client):
        """Test a ragged matrix is rejected."""
        payload = {"matrix": {"n": 2, "entries": [[[0, 0]]]}, "theta": 0.0}
        response = await client.post("/spectra/bounds", json=payload)
        assert response.status_code == 422

    @pytest.mark.asyncio
    async def test_too_few_angles(self, client):
        """Test the angle count lower bound."""
        response = await client.post("/spectra/radius", json={"matrix": JORDAN, "angles": 2})
        assert response.status_code == 422


class TestZooEndpoints:
    """Tests for the /zoo routes."""

    @pytest.mark.asyncio
    async def test_list(self, client):
        """Test the catalogue listing."""
        response = await client.get("/zoo")
        assert response.status_code == 200
        assert "triangular_pm1" in [entry["name"] for entry in response.json()]

    @pytest.mark.asyncio
    async def test_diag_with_query(self, client):
        """Test example parameters from the query string."""
        response = await client.get("/zoo/diag", params={"q": "1,-1"})
        assert response.status_code == 200
        matrix = response.json()["matrix"]
        assert matrix["n"] == 2
        assert matrix["entries"][1][1] == [-1.0, 0.0]

    @pytest.mark.asyncio
    async def test_unknown_example(self, client):
        """Test an unknown example name."""
        response = await client.get("/zoo/nope")
        assert response.status_code == 400
