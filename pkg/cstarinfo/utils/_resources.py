"""Access to files shipped inside the package"""
from importlib import resources


def _open_text(data_module, data_file_name):
    return resources.files(data_module).joinpath(data_file_name).open('r', encoding='utf-8')
