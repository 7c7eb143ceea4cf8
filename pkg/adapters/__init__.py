"""
Execution backends for the interferometry circuits.
"""
