"""
Domain operations package initialization
"""
