"""Lower-bound certificates for sumset sizes"""
