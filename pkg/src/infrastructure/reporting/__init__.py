# JSON and CSV report writers
from .report_writer import normalize, render, render_csv, render_json, write_report

__all__ = ['normalize', 'render', 'render_csv', 'render_json', 'write_report']
