import os
import yaml


def args_to_config_path(*args, root: callable) -> str:
    ''' config/config.yaml by default, or config/<name>.yaml '''
    if not args:
        args = ['config.yaml']
    elif args[-1].endswith('.yaml') or args[-1].endswith('.yml'):
        args = list(args)
    else:
        args = [*args[:-1], f'{args[-1]}.yaml']
    return root('config', *args)


def root(path: str = '', *args):
    ''' produces a path string of project path plus args '''
    return os.path.abspath(
        os.path.join(os.path.dirname(os.path.dirname(path)), *args))


def get(*args, path: str = None, root: callable = None) -> dict:
    ''' reads the flat yaml mapping, empty when the file is absent '''
    path = path or args_to_config_path(*args, root=root)
    if not os.path.exists(path):
        return {}
    with open(path, mode='r') as f:
        data = yaml.safe_load(f) or {}
    if not isinstance(data, dict):
        raise ValueError(f'config file {path} must hold a flat mapping')
    return data


def put(*args, data: dict = None, path: str = None, root: callable = None) -> str:
    ''' writes a yaml mapping into the config folder '''
    if data is not None:
        path = path or args_to_config_path(*args, root=root)
        os.makedirs(os.path.dirname(path), exist_ok=True)
        with open(path, mode='w') as f:
            yaml.dump(data, f, default_flow_style=False)
    return path


def var(name: str, default: str = None) -> str:
    ''' SORTLAB_<NAME> from the environment, spaces become underscores '''
    return os.environ.get(
        'SORTLAB_' + name.upper().replace(' ', '_'), default)


def setting(name: str, flag=None, *, default=None, cast: callable = None,
            get: callable = None):
    ''' flag > environment > config file > default '''
    for value in (flag, var(name), get().get(name)):
        if value is not None and value != '':
            return cast(value) if cast else value
    return default
