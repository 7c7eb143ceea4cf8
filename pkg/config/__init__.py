"""
Settings, presets and the config-file codec.
"""
