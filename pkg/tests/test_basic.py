import unittest
import os
import sys

# Add the parent directory to the path so we can import from app
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))


class TestBasicImports(unittest.TestCase):
    """Basic tests to ensure imports work correctly"""

    def test_import_algebra(self):
        """Test that the algebra layer can be imported"""
        from app.algebra import FieldContext, Poly, Degree10Coeffs, make_field

        self.assertTrue(FieldContext)
        self.assertTrue(Poly)
        self.assertTrue(Degree10Coeffs)
        self.assertTrue(callable(make_field))

    def test_import_tools(self):
        """Test that tools can be imported"""
        from app.tools import chebotarev_threshold, ddt_row, delta_full, thm_main_check, thm2_check

        for tool in (chebotarev_threshold, ddt_row, delta_full, thm_main_check, thm2_check):
            self.assertTrue(callable(tool))

    def test_import_runner(self):
        """Test that the runner registry covers every command"""
        from app.core.runner import runner_instance

        self.assertEqual(
            set(runner_instance.registry),
            {"check", "analyze", "stats", "bounds", "reproduce"},
        )

    def test_import_api(self):
        """Test that API components can be imported"""
        from app.main import app
        from app.api.routes import RunConfig

        self.assertIsNotNone(app)
        self.assertTrue(RunConfig)

    def test_config_import(self):
        """Test that config can be imported"""
        from app.core.config import settings

        self.assertIsNotNone(settings)
        self.assertEqual(settings.API_V1_STR, "/api/v1")
        self.assertTrue(hasattr(settings, 'ROW_MAX_N'))
        self.assertTrue(hasattr(settings, 'DELTA_MAX_N'))
        self.assertTrue(hasattr(settings, 'DEFAULT_SEED'))


class TestQuickArithmetic(unittest.TestCase):
    """Smoke test of the field layer"""

    def test_f16_example(self):
        from app.algebra.gf2n import make_field

        ctx = make_field(4, 0x19)
        alpha = ctx.pow(2, 10)
        self.assertEqual(ctx.mul(alpha, alpha), ctx.pow(2, 5))
        self.assertEqual(ctx.trace(alpha), 0)


class TestHealthCheck(unittest.TestCase):
    """Test basic API health check"""

    def test_health_endpoint(self):
        """Test the health check endpoint"""
        from fastapi.testclient import TestClient
        from app.main import app

        client = TestClient(app)
        response = client.get("/health")

        self.assertEqual(response.status_code, 200)
        self.assertEqual(response.json(), {"status": "healthy"})


if __name__ == '__main__':
    unittest.main()
