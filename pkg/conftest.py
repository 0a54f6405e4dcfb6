import os

import django

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'sdof_lab.settings')
django.setup()
